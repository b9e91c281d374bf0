#include "sebot/data/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "sebot/core/hash.hpp"
#include "sebot/data/synth.hpp"

namespace sebot::data {
namespace {

namespace fs = std::filesystem;
using graph::NodeId;

[[noreturn]] void fail(const fs::path& file, std::size_t line, std::size_t col, const std::string& msg) {
    throw std::runtime_error(file.string() + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

struct Field {
    std::string_view text;
    std::size_t column;  // 1-based character column
};

std::vector<Field> split_fields(std::string_view line, bool whitespace) {
    std::vector<Field> out;
    std::size_t i = 0;
    if (whitespace) {
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i >= line.size()) break;
            const std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            out.push_back({line.substr(start, i - start), start + 1});
        }
        return out;
    }
    std::size_t start = 0;
    for (i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            std::string_view f = line.substr(start, i - start);
            while (!f.empty() && std::isspace(static_cast<unsigned char>(f.back()))) f.remove_suffix(1);
            std::size_t lead = 0;
            while (lead < f.size() && std::isspace(static_cast<unsigned char>(f[lead]))) ++lead;
            out.push_back({f.substr(lead), start + lead + 1});
            start = i + 1;
        }
    }
    return out;
}

template <class T>
T parse_number(const Field& f, const fs::path& file, std::size_t line) {
    T v{};
    const char* b = f.text.data();
    const char* e = b + f.text.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || f.text.empty()) {
        fail(file, line, f.column, "cannot parse '" + std::string(f.text) + "' as a number");
    }
    return v;
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    return in;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

bool skip_line(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

Matrix read_features(const fs::path& file, bool whitespace) {
    auto in = open_in(file);
    std::vector<double> data;
    std::size_t rows = 0, cols = 0, lineno = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skip_line(line)) continue;
        const auto fields = split_fields(line, whitespace);
        if (rows == 0) cols = fields.size();
        if (fields.size() != cols) {
            fail(file, lineno, 1, "expected " + std::to_string(cols) + " values, found " + std::to_string(fields.size()));
        }
        for (const auto& f : fields) data.push_back(parse_number<double>(f, file, lineno));
        ++rows;
    }
    return Matrix(rows, cols, std::move(data));
}

graph::Label parse_label(const Field& f, const fs::path& file, std::size_t line) {
    const int v = parse_number<int>(f, file, line);
    if (v == 0) return graph::Label::Human;
    if (v == 1) return graph::Label::Bot;
    if (v == -1) return graph::Label::Unlabeled;
    fail(file, line, f.column, "label must be 0 (human), 1 (bot) or -1 (unlabeled)");
}

std::vector<graph::Label> read_labels(const fs::path& file, std::size_t n, bool whitespace, bool header) {
    auto in = open_in(file);
    std::vector<graph::Label> labels(n, graph::Label::Unlabeled);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (header && lineno == 1) continue;
        if (skip_line(line)) continue;
        const auto fields = split_fields(line, whitespace);
        if (fields.size() != 2) fail(file, lineno, 1, "expected 2 fields (node, label)");
        const auto node = parse_number<NodeId>(fields[0], file, lineno);
        if (node >= n) fail(file, lineno, fields[0].column, "node id " + std::to_string(node) + " out of range");
        labels[node] = parse_label(fields[1], file, lineno);
    }
    return labels;
}

graph::Splits read_splits(const fs::path& file, std::size_t* num_relations) {
    auto in = open_in(file);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(file.string() + ": " + e.what());
    }
    graph::Splits s;
    auto take = [&](const char* key, std::vector<NodeId>& out) {
        if (j.contains(key)) out = j.at(key).get<std::vector<NodeId>>();
    };
    take("train", s.train);
    take("val", s.val);
    take("test", s.test);
    if (num_relations && j.contains("num_relations")) *num_relations = j.at("num_relations").get<std::size_t>();
    return s;
}

}  // namespace

void save_dataset(const graph::MultiRelGraph& g, const fs::path& dir) {
    fs::create_directories(dir);
    {
        auto out = open_out(dir / "edges.csv");
        out << "src,dst,relation\n";
        for (std::size_t r = 0; r < g.num_relations(); ++r)
            for (const auto& e : g.relation(r)) out << e.src << ',' << e.dst << ',' << r << '\n';
    }
    {
        auto out = open_out(dir / "features.csv");
        char buf[32];
        for (std::size_t i = 0; i < g.num_nodes(); ++i) {
            for (std::size_t c = 0; c < g.feature_dim(); ++c) {
                std::snprintf(buf, sizeof buf, "%.17g", g.features()(i, c));
                out << (c ? "," : "") << buf;
            }
            out << '\n';
        }
    }
    const fs::path labels = dir / "labels.csv";
    if (g.has_labels()) {
        auto out = open_out(labels);
        out << "node,label\n";
        for (std::size_t i = 0; i < g.num_nodes(); ++i) out << i << ',' << static_cast<int>(g.labels()[i]) << '\n';
    } else {
        fs::remove(labels);
    }
    nlohmann::json s = {{"train", g.splits().train},
                        {"val", g.splits().val},
                        {"test", g.splits().test},
                        {"num_relations", g.num_relations()}};
    auto out = open_out(dir / "splits.json");
    out << s.dump() << '\n';
}

graph::MultiRelGraph load_dataset(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw std::runtime_error("dataset directory not found: " + dir.string());
    Matrix features = read_features(dir / "features.csv", false);
    const std::size_t n = features.rows();

    std::size_t num_relations = 0;
    graph::Splits splits;
    if (fs::exists(dir / "splits.json")) splits = read_splits(dir / "splits.json", &num_relations);

    std::vector<graph::EdgeSet> relations;
    {
        const fs::path file = dir / "edges.csv";
        auto in = open_in(file);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (lineno == 1) {
                if (line.rfind("src", 0) != 0) fail(file, 1, 1, "expected header 'src,dst,relation'");
                continue;
            }
            if (skip_line(line)) continue;
            const auto f = split_fields(line, false);
            if (f.size() != 3) fail(file, lineno, 1, "expected 3 fields (src, dst, relation)");
            const auto src = parse_number<NodeId>(f[0], file, lineno);
            const auto dst = parse_number<NodeId>(f[1], file, lineno);
            const auto rel = parse_number<std::size_t>(f[2], file, lineno);
            if (src >= n) fail(file, lineno, f[0].column, "node id " + std::to_string(src) + " out of range");
            if (dst >= n) fail(file, lineno, f[1].column, "node id " + std::to_string(dst) + " out of range");
            if (num_relations && rel >= num_relations) {
                fail(file, lineno, f[2].column, "relation " + std::to_string(rel) + " out of range");
            }
            if (rel >= relations.size()) relations.resize(rel + 1);
            relations[rel].push_back({src, dst});
        }
    }
    relations.resize(std::max<std::size_t>({num_relations, relations.size(), 1}));

    std::vector<graph::Label> labels;
    if (fs::exists(dir / "labels.csv")) labels = read_labels(dir / "labels.csv", n, false, true);
    return graph::MultiRelGraph(n, std::move(relations), std::move(features), std::move(labels), std::move(splits));
}

std::string dataset_hash(const graph::MultiRelGraph& g) {
    Fnv1a h;
    h.update_u64(g.num_nodes());
    h.update_u64(g.num_relations());
    for (const auto& rel : g.relations()) {
        h.update_u64(rel.size());
        for (const auto& e : rel) {
            h.update_u64(e.src);
            h.update_u64(e.dst);
        }
    }
    h.update_u64(g.features().rows());
    h.update_u64(g.features().cols());
    for (double v : g.features().data()) h.update_double(v);
    h.update_u64(g.labels().size());
    for (auto l : g.labels()) h.update_u64(static_cast<std::uint64_t>(static_cast<int>(l) + 1));
    for (const auto* part : {&g.splits().train, &g.splits().val, &g.splits().test}) {
        h.update_u64(part->size());
        for (auto v : *part) h.update_u64(v);
    }
    return h.hex();
}

graph::MultiRelGraph convert_edgelist(const EdgelistSource& src) {
    Matrix features = read_features(src.features, true);
    const std::size_t n = features.rows();
    std::vector<graph::EdgeSet> relations(1);
    {
        auto in = open_in(src.edges);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (skip_line(line)) continue;
            const auto f = split_fields(line, true);
            if (f.size() != 2 && f.size() != 3) fail(src.edges, lineno, 1, "expected 'src dst [relation]'");
            const auto a = parse_number<NodeId>(f[0], src.edges, lineno);
            const auto b = parse_number<NodeId>(f[1], src.edges, lineno);
            const std::size_t r = f.size() == 3 ? parse_number<std::size_t>(f[2], src.edges, lineno) : 0;
            if (a >= n) fail(src.edges, lineno, f[0].column, "node id " + std::to_string(a) + " out of range");
            if (b >= n) fail(src.edges, lineno, f[1].column, "node id " + std::to_string(b) + " out of range");
            if (r >= relations.size()) relations.resize(r + 1);
            relations[r].push_back({a, b});
        }
    }
    std::vector<graph::Label> labels;
    if (src.labels) labels = read_labels(*src.labels, n, true, false);
    graph::Splits splits;
    if (src.splits) {
        splits = read_splits(*src.splits, nullptr);
    } else if (!labels.empty()) {
        std::vector<NodeId> labeled;
        for (NodeId v = 0; v < n; ++v)
            if (labels[v] != graph::Label::Unlabeled) labeled.push_back(v);
        splits = random_splits(std::move(labeled), src.train_fraction, src.val_fraction, src.seed);
    }
    return graph::MultiRelGraph(n, std::move(relations), std::move(features), std::move(labels), std::move(splits));
}

}  // namespace sebot::data
