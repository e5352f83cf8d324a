#include "mc/drmc.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "mc/kernels.hpp"
#include "mc/params.hpp"

namespace mc {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw contract_error(what);
}

} // namespace

SimpleGraph compatibility_graph(const IncompleteMatrix& m, unsigned jobs) {
    const auto& kern = kernels::active();
    const std::size_t rows = m.rows(), cols = m.cols();
    SimpleGraph g(rows);
    if (jobs <= 1 || rows < 64) {
        for (std::size_t u = 0; u < rows; ++u) {
            for (std::size_t v = u + 1; v < rows; ++v) {
                if (kern.rows_compatible(m.row_data(u), m.row_data(v), cols)) {
                    g.add_edge(u, v);
                }
            }
        }
        return g;
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t u = 0; u < rows; ++u) {
        for (std::size_t v = u + 1; v < rows; ++v) pairs.emplace_back(u, v);
    }
    std::vector<char> edge(pairs.size(), 0);
    std::atomic<std::size_t> cursor{0};
    std::vector<std::future<void>> workers;
    for (unsigned w = 0; w < jobs; ++w) {
        workers.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i; (i = cursor.fetch_add(256)) < pairs.size();) {
                std::size_t end = std::min(pairs.size(), i + 256);
                for (; i < end; ++i) {
                    edge[i] = kern.rows_compatible(m.row_data(pairs[i].first),
                                                   m.row_data(pairs[i].second),
                                                   cols);
                }
            }
        }));
    }
    for (auto& w : workers) w.get();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (edge[i]) g.add_edge(pairs[i].first, pairs[i].second);
    }
    return g;
}

CompleteMatrix completion_from_cover(const IncompleteMatrix& m,
                                     const VertexPartition& partition) {
    std::vector<char> seen(m.rows(), 0);
    for (const auto& part : partition) {
        require(!part.empty(), "empty part in row partition");
        for (std::size_t r : part) {
            require(r < m.rows(), "row index out of range in partition");
            require(!seen[r], "row repeated in partition");
            seen[r] = 1;
        }
    }
    require(std::all_of(seen.begin(), seen.end(), [](char s) { return s; }),
            "partition does not cover all rows");

    CompleteMatrix out(m.field(), m.rows(), m.cols());
    for (const auto& part : partition) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            // All determined values in this column block must agree, else
            // the part was not a clique of the compatibility graph.
            std::optional<std::uint32_t> value;
            for (std::size_t r : part) {
                if (m.is_missing(r, j)) continue;
                std::uint32_t v = m.at(r, j);
                require(!value || *value == v,
                        "partition part is not a compatible clique");
                value = v;
            }
            std::uint32_t fill = value.value_or(0);
            for (std::size_t r : part) out.set(r, j, fill);
        }
    }
    return out;
}

std::size_t NiceTreeDecomposition::width() const {
    std::size_t w = 0;
    for (const Node& n : nodes_) w = std::max(w, n.bag.size());
    return w == 0 ? 0 : w - 1;
}

NiceTreeDecomposition NiceTreeDecomposition::build(std::vector<Node> nodes,
                                                   std::size_t root) {
    NiceTreeDecomposition d;
    d.nodes_ = std::move(nodes);
    d.root_ = root;
    return d;
}

void NiceTreeDecomposition::validate(const SimpleGraph& g) const {
    require(!nodes_.empty(), "decomposition has no nodes");
    require(root_ < nodes_.size(), "decomposition root out of range");
    require(nodes_[root_].bag.empty(), "root bag must be empty");

    std::vector<int> parent(nodes_.size(), -1);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        require(std::is_sorted(n.bag.begin(), n.bag.end()) &&
                    std::adjacent_find(n.bag.begin(), n.bag.end()) ==
                        n.bag.end(),
                "bag not sorted/unique");
        for (std::size_t v : n.bag) {
            require(v < g.size(), "bag vertex out of range");
        }
        auto claim_child = [&](int ch) {
            require(ch >= 0 && static_cast<std::size_t>(ch) < i,
                    "children must precede parents");
            require(parent[static_cast<std::size_t>(ch)] == -1,
                    "node has two parents");
            parent[static_cast<std::size_t>(ch)] = static_cast<int>(i);
        };
        switch (n.kind) {
        case Kind::leaf:
            require(n.child1 < 0 && n.child2 < 0 && n.bag.size() == 1,
                    "leaf node must have a singleton bag and no children");
            break;
        case Kind::introduce: {
            require(n.child1 >= 0 && n.child2 < 0, "introduce node arity");
            claim_child(n.child1);
            const auto& cb = nodes_[static_cast<std::size_t>(n.child1)].bag;
            require(!std::binary_search(cb.begin(), cb.end(), n.vertex),
                    "introduced vertex already in child bag");
            std::vector<std::size_t> expect = cb;
            expect.insert(std::upper_bound(expect.begin(), expect.end(),
                                           n.vertex),
                          n.vertex);
            require(expect == n.bag, "introduce bag mismatch");
            break;
        }
        case Kind::forget: {
            require(n.child1 >= 0 && n.child2 < 0, "forget node arity");
            claim_child(n.child1);
            const auto& cb = nodes_[static_cast<std::size_t>(n.child1)].bag;
            require(std::binary_search(cb.begin(), cb.end(), n.vertex),
                    "forgotten vertex not in child bag");
            std::vector<std::size_t> expect;
            for (std::size_t v : cb) {
                if (v != n.vertex) expect.push_back(v);
            }
            require(expect == n.bag, "forget bag mismatch");
            break;
        }
        case Kind::join: {
            require(n.child1 >= 0 && n.child2 >= 0, "join node arity");
            claim_child(n.child1);
            claim_child(n.child2);
            require(nodes_[static_cast<std::size_t>(n.child1)].bag == n.bag &&
                        nodes_[static_cast<std::size_t>(n.child2)].bag == n.bag,
                    "join bags mismatch");
            break;
        }
        }
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        require(i == root_ ? parent[i] == -1 : parent[i] != -1,
                "decomposition is not a tree rooted at root");
    }

    // (TD2): per-vertex occurrences form one nonempty subtree.
    std::vector<std::size_t> occurrences(g.size(), 0);
    std::vector<std::size_t> boundary(g.size(), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        for (std::size_t v : nodes_[i].bag) {
            ++occurrences[v];
            bool parent_has = false;
            if (parent[i] != -1) {
                const auto& pb = nodes_[static_cast<std::size_t>(parent[i])].bag;
                parent_has = std::binary_search(pb.begin(), pb.end(), v);
            }
            if (!parent_has) ++boundary[v];
        }
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
        require(occurrences[v] > 0, "vertex missing from every bag");
        require(boundary[v] == 1, "vertex occurrences are not connected");
    }

    // (TD1): every edge inside some bag.
    for (auto [u, v] : g.edges()) {
        bool found = false;
        for (const Node& n : nodes_) {
            if (std::binary_search(n.bag.begin(), n.bag.end(), u) &&
                std::binary_search(n.bag.begin(), n.bag.end(), v)) {
                found = true;
                break;
            }
        }
        require(found, "edge not covered by any bag");
    }
}

namespace {

using Bag = std::vector<std::size_t>;
using Node = NiceTreeDecomposition::Node;
using Kind = NiceTreeDecomposition::Kind;

// Builds nice chains bottom-up; nodes appended children-first.
struct NiceBuilder {
    std::vector<Node> nodes;

    int add(Node n) {
        nodes.push_back(std::move(n));
        return static_cast<int>(nodes.size() - 1);
    }

    // Leaf followed by introduces until the bag is complete.
    int grow_from_leaf(const Bag& bag) {
        int top = add({Kind::leaf, {bag.front()}, -1, -1, bag.front()});
        Bag current{bag.front()};
        for (std::size_t i = 1; i < bag.size(); ++i) {
            current.insert(std::upper_bound(current.begin(), current.end(),
                                            bag[i]),
                           bag[i]);
            top = add({Kind::introduce, current, top, -1, bag[i]});
        }
        return top;
    }

    // Forget/introduce chain transforming bag 'from' (at node top) into 'to'.
    int morph(int top, const Bag& from, const Bag& to) {
        Bag current = from;
        for (std::size_t v : from) {
            if (std::binary_search(to.begin(), to.end(), v)) continue;
            current.erase(std::find(current.begin(), current.end(), v));
            top = add({Kind::forget, current, top, -1, v});
        }
        for (std::size_t v : to) {
            if (std::binary_search(from.begin(), from.end(), v)) continue;
            current.insert(std::upper_bound(current.begin(), current.end(), v),
                           v);
            top = add({Kind::introduce, current, top, -1, v});
        }
        return top;
    }
};

} // namespace

NiceTreeDecomposition normalize_decomposition(
    const SimpleGraph& g, const std::vector<std::vector<std::size_t>>& bags,
    const std::vector<std::pair<std::size_t, std::size_t>>& tree_edges) {
    require(!bags.empty(), "no bags to normalize");
    std::vector<Bag> sorted_bags = bags;
    for (Bag& b : sorted_bags) {
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        require(!b.empty(), "empty bag");
    }

    std::vector<std::vector<std::size_t>> adj(sorted_bags.size());
    for (auto [a, b] : tree_edges) {
        require(a < sorted_bags.size() && b < sorted_bags.size() && a != b,
                "bad tree edge");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }

    NiceBuilder builder;
    // Recursive construction; returns the top node index with bag == bags[u].
    auto rec = [&](auto&& self, std::size_t u, std::size_t parent_node,
                   bool has_parent) -> int {
        std::vector<int> child_tops;
        for (std::size_t v : adj[u]) {
            if (has_parent && v == parent_node) continue;
            int ct = self(self, v, u, true);
            child_tops.push_back(
                builder.morph(ct, sorted_bags[v], sorted_bags[u]));
        }
        if (child_tops.empty()) return builder.grow_from_leaf(sorted_bags[u]);
        int top = child_tops[0];
        for (std::size_t i = 1; i < child_tops.size(); ++i) {
            top = builder.add(
                {Kind::join, sorted_bags[u], top, child_tops[i], 0});
        }
        return top;
    };

    const std::size_t root_bag = sorted_bags.size() - 1;
    int top = rec(rec, root_bag, 0, false);
    // Forget everything to reach the empty root bag.
    Bag current = sorted_bags[root_bag];
    while (!current.empty()) {
        std::size_t v = current.back();
        current.pop_back();
        top = builder.add({Kind::forget, current, top, -1, v});
    }
    NiceTreeDecomposition d = NiceTreeDecomposition::build(
        std::move(builder.nodes), static_cast<std::size_t>(top));
    d.validate(g);
    return d;
}

namespace {

// Min-fill elimination ordering; ties break on the smaller vertex index.
std::vector<std::vector<std::size_t>> min_fill_bags(
    const SimpleGraph& g, std::vector<std::pair<std::size_t, std::size_t>>* edges) {
    const std::size_t n = g.size();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto [u, v] : g.edges()) {
        adj[u][v] = 1;
        adj[v][u] = 1;
    }
    std::vector<char> alive(n, 1);
    std::vector<std::vector<std::size_t>> bags;
    std::vector<std::size_t> step_of(n, 0);

    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        std::size_t best_fill = std::numeric_limits<std::size_t>::max();
        for (std::size_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            std::vector<std::size_t> nb;
            for (std::size_t u = 0; u < n; ++u) {
                if (alive[u] && adj[v][u]) nb.push_back(u);
            }
            std::size_t fill = 0;
            for (std::size_t a = 0; a < nb.size(); ++a) {
                for (std::size_t b = a + 1; b < nb.size(); ++b) {
                    if (!adj[nb[a]][nb[b]]) ++fill;
                }
            }
            if (fill < best_fill) {
                best_fill = fill;
                best = v;
            }
        }
        std::vector<std::size_t> nb;
        for (std::size_t u = 0; u < n; ++u) {
            if (alive[u] && adj[best][u]) nb.push_back(u);
        }
        for (std::size_t a = 0; a < nb.size(); ++a) {
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                adj[nb[a]][nb[b]] = 1;
                adj[nb[b]][nb[a]] = 1;
            }
        }
        std::vector<std::size_t> bag = nb;
        bag.push_back(best);
        std::sort(bag.begin(), bag.end());
        bags.push_back(std::move(bag));
        step_of[best] = step;
        alive[best] = 0;
    }

    if (edges) {
        // Recompute neighbor sets per step to wire the tree: the parent of
        // bag i is the bag of the earliest-eliminated member of its
        // neighborhood, or simply the next bag when isolated.
        for (std::size_t i = 0; i < bags.size(); ++i) {
            std::size_t parent_step = n;
            std::size_t self = n;
            for (std::size_t v : bags[i]) {
                if (step_of[v] == i) {
                    self = v;
                    continue;
                }
                parent_step = std::min(parent_step, step_of[v]);
            }
            (void)self;
            if (parent_step < n) {
                edges->emplace_back(i, parent_step);
            } else if (i + 1 < bags.size()) {
                edges->emplace_back(i, i + 1);
            }
        }
    }
    return bags;
}

} // namespace

NiceTreeDecomposition nice_decomposition(
    const SimpleGraph& g,
    const std::vector<std::vector<std::size_t>>* hint_bags) {
    require(g.size() > 0, "cannot decompose the empty graph");
    if (hint_bags != nullptr) {
        std::vector<std::vector<std::size_t>> bags;
        for (const auto& b : *hint_bags) {
            if (!b.empty()) bags.push_back(b);
        }
        require(!bags.empty(), "hint bags are all empty");
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t i = 0; i + 1 < bags.size(); ++i) {
            edges.emplace_back(i, i + 1);
        }
        return normalize_decomposition(g, bags, edges);
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    auto bags = min_fill_bags(g, &edges);
    return normalize_decomposition(g, bags, edges);
}

namespace {

// === Clique Cover DP ======================================================
//
// A record at a decomposition node is a partition of the bag into cliques,
// each part flagged with whether it already extends below the bag, plus
// the minimum clique count realizing it on the processed subgraph. The
// flag is load-bearing: a part with vertices below the bag can never
// accept an introduced vertex, and at a join at most one side may extend
// any given part, because vertices in different subtrees outside the bag
// are never adjacent.

struct RecordKey {
    std::vector<std::uint8_t> parts; // restricted-growth labels per bag slot
    std::uint32_t ext = 0;           // bit q: part q extends below the bag

    friend bool operator<(const RecordKey& a, const RecordKey& b) {
        if (a.parts != b.parts) return a.parts < b.parts;
        return a.ext < b.ext;
    }
    friend bool operator==(const RecordKey& a, const RecordKey& b) {
        return a.parts == b.parts && a.ext == b.ext;
    }
};

std::size_t part_count(const RecordKey& key) {
    std::size_t n = 0;
    for (std::uint8_t q : key.parts) {
        n = std::max<std::size_t>(n, static_cast<std::size_t>(q) + 1);
    }
    return n;
}

// Relabels part ids in first-occurrence order and remaps the flag bits.
RecordKey canonicalize(const std::vector<std::uint8_t>& labels,
                       std::uint32_t ext) {
    std::vector<int> remap(labels.size() + 32, -1);
    RecordKey key;
    key.parts.resize(labels.size());
    std::uint8_t next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (remap[labels[i]] < 0) remap[labels[i]] = next++;
        key.parts[i] = static_cast<std::uint8_t>(remap[labels[i]]);
    }
    for (std::size_t q = 0; q < remap.size(); ++q) {
        if (remap[q] >= 0 && ((ext >> q) & 1u)) {
            key.ext |= 1u << remap[q];
        }
    }
    return key;
}

struct Provenance {
    enum class Src : std::uint8_t {
        leaf,
        intro_join,
        intro_new,
        forget,
        join,
    };
    Src src = Src::leaf;
    RecordKey child1;
    RecordKey child2;
    std::uint8_t joined_label = 0; // child-space label (intro_join)
};

struct Record {
    std::uint32_t c = 0;
    Provenance prov;
};

using RecordMap = std::map<RecordKey, Record>;

void upsert(RecordMap& map, RecordKey key, std::uint32_t c, Provenance prov) {
    auto [it, inserted] = map.try_emplace(std::move(key), Record{c, prov});
    if (!inserted && c < it->second.c) {
        it->second = Record{c, prov};
    }
}

std::size_t position_of(const std::vector<std::size_t>& bag, std::size_t v) {
    return static_cast<std::size_t>(
        std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

VertexPartition reconstruct(const NiceTreeDecomposition& d,
                            const std::vector<RecordMap>& records,
                            std::size_t node_idx, const RecordKey& key) {
    const Node& node = d.nodes()[node_idx];
    const Record& rec = records[node_idx].at(key);

    auto part_with = [](VertexPartition& parts,
                        std::size_t v) -> std::vector<std::size_t>& {
        for (auto& part : parts) {
            if (std::binary_search(part.begin(), part.end(), v)) return part;
        }
        throw contract_error("reconstruction lost a vertex");
    };

    switch (rec.prov.src) {
    case Provenance::Src::leaf:
        return {{node.bag.front()}};
    case Provenance::Src::intro_new: {
        VertexPartition parts =
            reconstruct(d, records, static_cast<std::size_t>(node.child1),
                        rec.prov.child1);
        parts.push_back({node.vertex});
        return parts;
    }
    case Provenance::Src::intro_join: {
        const auto& child_bag =
            d.nodes()[static_cast<std::size_t>(node.child1)].bag;
        const RecordKey& ck = rec.prov.child1;
        VertexPartition parts = reconstruct(
            d, records, static_cast<std::size_t>(node.child1), ck);
        // Any bag member of the joined part identifies it.
        std::size_t anchor = 0;
        bool found = false;
        for (std::size_t i = 0; i < child_bag.size(); ++i) {
            if (ck.parts[i] == rec.prov.joined_label) {
                anchor = child_bag[i];
                found = true;
                break;
            }
        }
        require(found, "joined part has no bag member");
        auto& part = part_with(parts, anchor);
        part.insert(std::upper_bound(part.begin(), part.end(), node.vertex),
                    node.vertex);
        return parts;
    }
    case Provenance::Src::forget:
        return reconstruct(d, records, static_cast<std::size_t>(node.child1),
                           rec.prov.child1);
    case Provenance::Src::join: {
        VertexPartition left = reconstruct(
            d, records, static_cast<std::size_t>(node.child1), rec.prov.child1);
        VertexPartition right = reconstruct(
            d, records, static_cast<std::size_t>(node.child2), rec.prov.child2);
        VertexPartition out;
        std::vector<char> used_left(left.size(), 0), used_right(right.size(), 0);
        const std::size_t nparts = part_count(key);
        for (std::size_t q = 0; q < nparts; ++q) {
            std::size_t anchor = 0;
            bool found = false;
            for (std::size_t i = 0; i < node.bag.size(); ++i) {
                if (key.parts[i] == q) {
                    anchor = node.bag[i];
                    found = true;
                    break;
                }
            }
            require(found, "bag part without members");
            std::vector<std::size_t> merged;
            for (std::size_t i = 0; i < left.size(); ++i) {
                if (!used_left[i] && std::binary_search(left[i].begin(),
                                                        left[i].end(), anchor)) {
                    merged = left[i];
                    used_left[i] = 1;
                    break;
                }
            }
            for (std::size_t i = 0; i < right.size(); ++i) {
                if (!used_right[i] &&
                    std::binary_search(right[i].begin(), right[i].end(),
                                       anchor)) {
                    std::vector<std::size_t> u;
                    std::set_union(merged.begin(), merged.end(),
                                   right[i].begin(), right[i].end(),
                                   std::back_inserter(u));
                    merged = std::move(u);
                    used_right[i] = 1;
                    break;
                }
            }
            require(!merged.empty(), "join part lost during reconstruction");
            out.push_back(std::move(merged));
        }
        for (std::size_t i = 0; i < left.size(); ++i) {
            if (!used_left[i]) out.push_back(left[i]);
        }
        for (std::size_t i = 0; i < right.size(); ++i) {
            if (!used_right[i]) out.push_back(right[i]);
        }
        return out;
    }
    }
    throw contract_error("unreachable reconstruction case");
}

} // namespace

std::optional<VertexPartition> clique_cover_tw(const SimpleGraph& g,
                                               const NiceTreeDecomposition& d,
                                               std::size_t k) {
    d.validate(g);
    if (d.width() + 1 > 31) {
        throw resource_error("decomposition too wide for the DP record mask");
    }

    std::vector<RecordMap> records(d.nodes().size());
    for (std::size_t idx = 0; idx < d.nodes().size(); ++idx) {
        const Node& node = d.nodes()[idx];
        RecordMap& out = records[idx];
        switch (node.kind) {
        case Kind::leaf: {
            RecordKey key;
            key.parts = {0};
            upsert(out, key, 1, {Provenance::Src::leaf, {}, {}, 0});
            break;
        }
        case Kind::introduce: {
            const auto child = static_cast<std::size_t>(node.child1);
            const auto& child_bag = d.nodes()[child].bag;
            const std::size_t pos_v = position_of(node.bag, node.vertex);
            for (const auto& [ck, rec] : records[child]) {
                const std::size_t nparts = ck.parts.empty()
                                               ? 0
                                               : part_count(ck);
                // Join an existing part: it must lie fully in the bag and
                // be fully adjacent to the new vertex.
                for (std::size_t q = 0; q < nparts; ++q) {
                    if ((ck.ext >> q) & 1u) continue;
                    bool clique = true;
                    for (std::size_t i = 0; i < child_bag.size(); ++i) {
                        if (ck.parts[i] == q &&
                            !g.adjacent(node.vertex, child_bag[i])) {
                            clique = false;
                            break;
                        }
                    }
                    if (!clique) continue;
                    std::vector<std::uint8_t> labels = ck.parts;
                    labels.insert(labels.begin() + pos_v,
                                  static_cast<std::uint8_t>(q));
                    upsert(out, canonicalize(labels, ck.ext), rec.c,
                           {Provenance::Src::intro_join, ck, {},
                            static_cast<std::uint8_t>(q)});
                }
                // Open a new singleton part.
                std::vector<std::uint8_t> labels = ck.parts;
                labels.insert(labels.begin() + pos_v,
                              static_cast<std::uint8_t>(nparts));
                upsert(out, canonicalize(labels, ck.ext), rec.c + 1,
                       {Provenance::Src::intro_new, ck, {}, 0});
            }
            break;
        }
        case Kind::forget: {
            const auto child = static_cast<std::size_t>(node.child1);
            const auto& child_bag = d.nodes()[child].bag;
            const std::size_t pos_v = position_of(child_bag, node.vertex);
            for (const auto& [ck, rec] : records[child]) {
                const std::uint8_t q = ck.parts[pos_v];
                std::vector<std::uint8_t> labels = ck.parts;
                labels.erase(labels.begin() + pos_v);
                std::uint32_t ext = ck.ext;
                if (std::find(labels.begin(), labels.end(), q) !=
                    labels.end()) {
                    // The part keeps bag members but now owns a forgotten
                    // vertex below the bag.
                    ext |= 1u << q;
                }
                upsert(out, canonicalize(labels, ext), rec.c,
                       {Provenance::Src::forget, ck, {}, 0});
            }
            break;
        }
        case Kind::join: {
            const auto c1 = static_cast<std::size_t>(node.child1);
            const auto c2 = static_cast<std::size_t>(node.child2);
            std::map<std::vector<std::uint8_t>,
                     std::vector<const std::pair<const RecordKey, Record>*>>
                by_parts;
            for (const auto& entry : records[c2]) {
                by_parts[entry.first.parts].push_back(&entry);
            }
            for (const auto& [k1, r1] : records[c1]) {
                auto it = by_parts.find(k1.parts);
                if (it == by_parts.end()) continue;
                const std::size_t nparts = part_count(k1);
                for (const auto* entry : it->second) {
                    const RecordKey& k2 = entry->first;
                    // A part may extend below on at most one side; the
                    // merged part is then that side's clique.
                    if ((k1.ext & k2.ext) != 0) continue;
                    RecordKey key;
                    key.parts = k1.parts;
                    key.ext = k1.ext | k2.ext;
                    upsert(out, std::move(key),
                           r1.c + entry->second.c -
                               static_cast<std::uint32_t>(nparts),
                           {Provenance::Src::join, k1, k2, 0});
                }
            }
            break;
        }
        }
    }

    const RecordMap& root_map = records[d.root()];
    RecordKey root_key; // empty bag
    auto it = root_map.find(root_key);
    require(it != root_map.end(), "DP produced no root record");
    if (it->second.c > k) return std::nullopt;

    VertexPartition partition = reconstruct(d, records, d.root(), root_key);
    require(partition.size() == it->second.c,
            "reconstructed partition size mismatch");
    std::vector<char> seen(g.size(), 0);
    for (const auto& part : partition) {
        for (std::size_t i = 0; i < part.size(); ++i) {
            require(!seen[part[i]], "vertex in two parts");
            seen[part[i]] = 1;
            for (std::size_t j = i + 1; j < part.size(); ++j) {
                require(g.adjacent(part[i], part[j]),
                        "reconstructed part is not a clique");
            }
        }
    }
    require(std::all_of(seen.begin(), seen.end(), [](char s) { return s; }),
            "reconstructed partition misses vertices");
    return partition;
}

namespace {

struct CoverSearch {
    const SimpleGraph& g;
    std::size_t limit; // maximum number of parts
    std::size_t omega; // maximum clique size, for the capacity prune
    VertexPartition current;
    std::optional<VertexPartition> best; // minimizing mode
    bool decision_only;

    bool extend(std::size_t covered) {
        if (covered == g.size()) {
            if (!decision_only) {
                if (!best || current.size() < best->size()) best = current;
            } else {
                best = current;
            }
            return decision_only;
        }
        if (!decision_only && best && current.size() >= best->size()) {
            return false;
        }
        // Capacity prune: open parts can absorb up to omega members, new
        // parts likewise.
        std::size_t capacity = (limit - current.size()) * omega;
        for (const auto& part : current) {
            capacity += omega - std::min(omega, part.size());
        }
        if (g.size() - covered > capacity) return false;

        std::size_t v = 0;
        std::vector<char> in_part(g.size(), 0);
        for (const auto& part : current) {
            for (std::size_t u : part) in_part[u] = 1;
        }
        while (v < g.size() && in_part[v]) ++v;

        for (auto& part : current) {
            bool clique = true;
            for (std::size_t u : part) {
                if (!g.adjacent(u, v)) {
                    clique = false;
                    break;
                }
            }
            if (!clique) continue;
            part.push_back(v);
            if (extend(covered + 1)) return true;
            part.pop_back();
        }
        if (current.size() < limit) {
            current.push_back({v});
            if (extend(covered + 1)) return true;
            current.pop_back();
        }
        return false;
    }
};

} // namespace

std::size_t max_clique_size(const SimpleGraph& g) {
    const std::size_t n = g.size();
    std::size_t best = 0;
    std::vector<std::size_t> clique;
    auto extend = [&](auto&& self, std::vector<std::size_t>& cand) -> void {
        if (clique.size() + cand.size() <= best) return;
        if (cand.empty()) {
            best = std::max(best, clique.size());
            return;
        }
        // Branch on candidates in order; standard prune.
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (clique.size() + (cand.size() - i) <= best) return;
            std::size_t v = cand[i];
            std::vector<std::size_t> next;
            for (std::size_t j = i + 1; j < cand.size(); ++j) {
                if (g.adjacent(v, cand[j])) next.push_back(cand[j]);
            }
            clique.push_back(v);
            self(self, next);
            clique.pop_back();
        }
    };
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    extend(extend, all);
    return best;
}

VertexPartition brute_force_clique_cover(const SimpleGraph& g) {
    if (g.size() > 12) {
        throw resource_error("brute_force_clique_cover limited to 12 vertices");
    }
    if (g.size() == 0) return {};
    CoverSearch search{g, g.size(), std::max<std::size_t>(1, max_clique_size(g)),
                       {}, std::nullopt, false};
    search.extend(0);
    // All-singletons is always a cover, so a minimum exists.
    require(search.best.has_value(), "cover search found nothing");
    return *search.best;
}

std::optional<VertexPartition> find_clique_cover(const SimpleGraph& g,
                                                 std::size_t k) {
    if (g.size() == 0) return VertexPartition{};
    if (k == 0) return std::nullopt;
    CoverSearch search{g, k, std::max<std::size_t>(1, max_clique_size(g)),
                       {}, std::nullopt, true};
    if (!search.extend(0)) return std::nullopt;
    return *search.best;
}

bool has_clique_cover(const SimpleGraph& g, std::size_t k) {
    return find_clique_cover(g, k).has_value();
}

bool has_triangle_partition(const SimpleGraph& g) {
    if (g.size() % 3 != 0) return false;
    if (g.size() == 0) return true;
    std::vector<char> used(g.size(), 0);
    auto rec = [&](auto&& self, std::size_t covered) -> bool {
        if (covered == g.size()) return true;
        std::size_t v = 0;
        while (used[v]) ++v;
        used[v] = 1;
        auto nb = g.neighbors(v);
        for (std::size_t a = 0; a < nb.size(); ++a) {
            if (used[nb[a]]) continue;
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                if (used[nb[b]] || !g.adjacent(nb[a], nb[b])) continue;
                used[nb[a]] = used[nb[b]] = 1;
                if (self(self, covered + 3)) return true;
                used[nb[a]] = used[nb[b]] = 0;
            }
        }
        used[v] = 0;
        return false;
    };
    return rec(rec, 0);
}

std::vector<std::vector<std::size_t>> row_hint_bags(const IncompleteMatrix& m) {
    const CoverWitness cover = covering_rows(m);
    std::vector<char> covering(m.rows(), 0);
    for (std::size_t r : cover.rows) covering[r] = 1;

    // Complete rows grouped by content: identical rows stay compatible, so
    // each group must share a bag; with pairwise-distinct rows every group
    // is a singleton and the bags are cover + one row each.
    std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> groups;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (covering[r]) continue;
        std::vector<std::uint32_t> content(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) content[j] = m.at(r, j);
        groups[content].push_back(r);
    }

    std::vector<std::vector<std::size_t>> bags;
    for (const auto& [content, rows] : groups) {
        std::vector<std::size_t> bag = cover.rows;
        bag.insert(bag.end(), rows.begin(), rows.end());
        std::sort(bag.begin(), bag.end());
        bags.push_back(std::move(bag));
    }
    if (bags.empty()) bags.push_back(cover.rows);
    return bags;
}

std::vector<std::vector<std::size_t>> comb_hint_bags(const IncompleteMatrix& m) {
    const CoverWitness cover = comb_cover(m);
    std::vector<char> covering_row(m.rows(), 0), covering_col(m.cols(), 0);
    for (std::size_t r : cover.rows) covering_row[r] = 1;
    for (std::size_t c : cover.cols) covering_col[c] = 1;

    // Rows outside the covering rows are complete outside the covering
    // columns; group them by those determined values. Rows of different
    // groups are incompatible, so each bag is cover-rows + one group.
    std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> groups;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (covering_row[r]) continue;
        std::vector<std::uint32_t> keyvec;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!covering_col[j]) keyvec.push_back(m.at(r, j));
        }
        groups[keyvec].push_back(r);
    }

    std::vector<std::vector<std::size_t>> bags;
    for (const auto& [keyvec, rows] : groups) {
        std::vector<std::size_t> bag = cover.rows;
        bag.insert(bag.end(), rows.begin(), rows.end());
        std::sort(bag.begin(), bag.end());
        bags.push_back(std::move(bag));
    }
    if (bags.empty()) bags.push_back(cover.rows);
    return bags;
}

DrmcResult solve_drmc(const IncompleteMatrix& m, std::size_t t,
                      DrmcStrategy strategy, unsigned jobs) {
    SimpleGraph g = compatibility_graph(m, jobs);

    auto build = [&](DrmcStrategy s) -> NiceTreeDecomposition {
        switch (s) {
        case DrmcStrategy::row_hint: {
            auto bags = row_hint_bags(m);
            return nice_decomposition(g, &bags);
        }
        case DrmcStrategy::comb_hint: {
            auto bags = comb_hint_bags(m);
            return nice_decomposition(g, &bags);
        }
        default:
            return nice_decomposition(g);
        }
    };

    NiceTreeDecomposition best = [&] {
        if (strategy != DrmcStrategy::auto_select) return build(strategy);
        NiceTreeDecomposition chosen = build(DrmcStrategy::row_hint);
        for (DrmcStrategy s :
             {DrmcStrategy::comb_hint, DrmcStrategy::heuristic}) {
            NiceTreeDecomposition candidate = build(s);
            if (candidate.width() < chosen.width()) {
                chosen = std::move(candidate);
            }
        }
        return chosen;
    }();

    DrmcResult result;
    result.decomposition_width = best.width();
    auto partition = clique_cover_tw(g, best, t);
    if (!partition) return result;

    CompleteMatrix completion = completion_from_cover(m, *partition);
    require(is_consistent(completion, m),
            "drmc solver produced inconsistent completion");
    require(distinct_rows(completion) <= t,
            "drmc solver exceeded the distinct-row bound");
    result.sat = true;
    result.completion = std::move(completion);
    result.partition = std::move(*partition);
    return result;
}

namespace {

std::pair<std::size_t, CompleteMatrix> min_dr_completion(
    const IncompleteMatrix& m, std::uint64_t budget) {
    const auto holes = m.missing_positions();
    const std::uint64_t p = m.field().modulus();
    unsigned __int128 space = 1;
    for (std::size_t i = 0; i < holes.size(); ++i) {
        space *= p;
        if (space > budget) {
            throw resource_error("completion space exceeds enumeration budget");
        }
    }
    CompleteMatrix work(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            work.set(i, j, m.is_missing(i, j) ? 0 : m.at(i, j));
        }
    }
    std::vector<std::uint32_t> values(holes.size(), 0);
    CompleteMatrix best = work;
    std::size_t best_dr = distinct_rows(work);
    for (;;) {
        std::size_t i = holes.size();
        bool advanced = false;
        while (i > 0) {
            --i;
            if (++values[i] < p) {
                work.set(holes[i].first, holes[i].second, values[i]);
                advanced = true;
                break;
            }
            values[i] = 0;
            work.set(holes[i].first, holes[i].second, 0);
        }
        if (!advanced) break;
        std::size_t dr = distinct_rows(work);
        if (dr < best_dr) {
            best_dr = dr;
            best = work;
            if (best_dr == 1) break;
        }
    }
    return {best_dr, best};
}

} // namespace

std::size_t brute_force_min_distinct_rows(const IncompleteMatrix& m,
                                          std::uint64_t budget) {
    return min_dr_completion(m, budget).first;
}

DrmcResult brute_force_drmc(const IncompleteMatrix& m, std::size_t t,
                            std::uint64_t budget) {
    auto [best_dr, best] = min_dr_completion(m, budget);
    DrmcResult result;
    if (best_dr > t) return result;
    // Group identical rows for the witness partition.
    std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < best.rows(); ++i) {
        groups[best.row(i)].push_back(i);
    }
    for (const auto& [content, rows] : groups) result.partition.push_back(rows);
    result.sat = true;
    result.completion = std::move(best);
    return result;
}

} // namespace mc
