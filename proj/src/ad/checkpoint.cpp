#include "sebot/ad/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sebot::ad {
namespace {

constexpr char kMagic[8] = {'S', 'E', 'B', 'O', 'T', 'C', 'K', 'P'};
constexpr std::uint32_t kVersion = 1;

std::filesystem::path with_ext(const std::filesystem::path& stem, const char* ext) {
    auto p = stem;
    p += ext;
    return p;
}

template <class T>
void put(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in, const std::filesystem::path& path) {
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) throw std::runtime_error("checkpoint: truncated file " + path.string());
    return v;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& stem, const ParamStore& store, const std::string& config_hash,
                     const nlohmann::json& extra) {
    const auto bin = with_ext(stem, ".bin");
    std::ofstream out(bin, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot write " + bin.string());
    out.write(kMagic, sizeof kMagic);
    put(out, kVersion);
    put(out, static_cast<std::uint64_t>(store.size()));
    nlohmann::json params = nlohmann::json::array();
    for (const auto& [name, p] : store) {
        put(out, static_cast<std::uint32_t>(name.size()));
        out.write(name.data(), static_cast<std::streamsize>(name.size()));
        put(out, static_cast<std::uint64_t>(p.value.rows()));
        put(out, static_cast<std::uint64_t>(p.value.cols()));
        out.write(reinterpret_cast<const char*>(p.value.data().data()),
                  static_cast<std::streamsize>(p.value.size() * sizeof(double)));
        params.push_back({{"name", name}, {"rows", p.value.rows()}, {"cols", p.value.cols()}});
    }
    if (!out) throw std::runtime_error("checkpoint: write failed for " + bin.string());

    nlohmann::json manifest = extra;
    manifest["format"] = "sebot-checkpoint";
    manifest["version"] = kVersion;
    manifest["config_hash"] = config_hash;
    manifest["params"] = params;
    const auto js = with_ext(stem, ".json");
    std::ofstream mout(js, std::ios::trunc);
    if (!mout) throw std::runtime_error("checkpoint: cannot write " + js.string());
    mout << manifest.dump(2) << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& stem) {
    Checkpoint ck;
    const auto js = with_ext(stem, ".json");
    std::ifstream min(js);
    if (!min) throw std::runtime_error("checkpoint: cannot read " + js.string());
    ck.manifest = nlohmann::json::parse(min);

    const auto bin = with_ext(stem, ".bin");
    std::ifstream in(bin, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint: cannot read " + bin.string());
    char magic[8];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
        throw std::runtime_error("checkpoint: bad magic in " + bin.string());
    }
    const auto version = get<std::uint32_t>(in, bin);
    if (version != kVersion) throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
    const auto count = get<std::uint64_t>(in, bin);
    for (std::uint64_t k = 0; k < count; ++k) {
        const auto len = get<std::uint32_t>(in, bin);
        std::string name(len, '\0');
        if (!in.read(name.data(), len)) throw std::runtime_error("checkpoint: truncated file " + bin.string());
        const auto rows = get<std::uint64_t>(in, bin);
        const auto cols = get<std::uint64_t>(in, bin);
        std::vector<double> data(rows * cols);
        if (!in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(double)))) {
            throw std::runtime_error("checkpoint: truncated file " + bin.string());
        }
        ck.params.emplace(std::move(name), Matrix(rows, cols, std::move(data)));
    }

    const auto& listed = ck.manifest.at("params");
    if (listed.size() != ck.params.size()) throw std::runtime_error("checkpoint: manifest and blob disagree on parameter count");
    for (const auto& e : listed) {
        auto it = ck.params.find(e.at("name").get<std::string>());
        if (it == ck.params.end() || it->second.rows() != e.at("rows").get<std::size_t>() ||
            it->second.cols() != e.at("cols").get<std::size_t>()) {
            throw std::runtime_error("checkpoint: manifest entry " + e.dump() + " does not match blob");
        }
    }
    return ck;
}

void apply_checkpoint(const Checkpoint& ckpt, ParamStore& store) {
    if (ckpt.params.size() != store.size()) {
        throw std::invalid_argument("checkpoint: holds " + std::to_string(ckpt.params.size()) +
                                    " parameters, model expects " + std::to_string(store.size()));
    }
    store.restore(ckpt.params);
}

}  // namespace sebot::ad
