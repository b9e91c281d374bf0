#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sebot/core/matrix.hpp"

namespace sebot::graph {

using NodeId = std::size_t;

struct Edge {
    NodeId src = 0;
    NodeId dst = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
};

using EdgeSet = std::vector<Edge>;

enum class Label : std::int8_t { Unlabeled = -1, Human = 0, Bot = 1 };

struct Splits {
    std::vector<NodeId> train;
    std::vector<NodeId> val;
    std::vector<NodeId> test;
    friend bool operator==(const Splits&, const Splits&) = default;
};

/// Attributed, directed, multi-relational account graph. Immutable once
/// constructed; the constructor enforces endpoint range, feature row count,
/// split disjointness and R >= 1.
class MultiRelGraph {
public:
    MultiRelGraph(std::size_t num_nodes, std::vector<EdgeSet> relations, Matrix features,
                  std::vector<Label> labels = {}, Splits splits = {});

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_relations() const noexcept { return relations_.size(); }
    const std::vector<EdgeSet>& relations() const noexcept { return relations_; }
    const EdgeSet& relation(std::size_t r) const { return relations_.at(r); }
    std::size_t num_edges() const noexcept;

    const Matrix& features() const noexcept { return features_; }
    std::size_t feature_dim() const noexcept { return features_.cols(); }

    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<Label>& labels() const noexcept { return labels_; }
    Label label(NodeId v) const { return labels_.empty() ? Label::Unlabeled : labels_.at(v); }

    const Splits& splits() const noexcept { return splits_; }

    // Copies with one component replaced; invariants re-checked.
    MultiRelGraph with_relations(std::vector<EdgeSet> relations) const;
    MultiRelGraph with_features(Matrix features) const;
    MultiRelGraph with_splits(Splits splits) const;

    friend bool operator==(const MultiRelGraph&, const MultiRelGraph&) = default;

private:
    std::size_t num_nodes_;
    std::vector<EdgeSet> relations_;
    Matrix features_;
    std::vector<Label> labels_;
    Splits splits_;
};

}  // namespace sebot::graph
