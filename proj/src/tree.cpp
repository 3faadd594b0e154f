#include "mmp/tree.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "mmp/t0.hpp"

namespace mmp {

// ---------------------------------------------------------------------------
// DecoratedTree basics
// ---------------------------------------------------------------------------

int DecoratedTree::add_node(int w, int group) {
    int id = next_id_++;
    nodes_.push_back({id, w, group});
    return id;
}

void DecoratedTree::add_node_with_id(int id, int w, int group) {
    if (has_node(id)) fail(Errc::ParseError, "duplicate node id " + std::to_string(id));
    nodes_.push_back({id, w, group});
    next_id_ = std::max(next_id_, id + 1);
}

void DecoratedTree::add_edge(int a, int b) {
    if (a == b || !has_node(a) || !has_node(b)) fail(Errc::ParseError, "bad edge");
    if (a > b) std::swap(a, b);
    edges_.emplace_back(a, b);
}

void DecoratedTree::remove_edge(int a, int b) {
    if (a > b) std::swap(a, b);
    auto it = std::find(edges_.begin(), edges_.end(), std::make_pair(a, b));
    if (it == edges_.end()) fail(Errc::ParseError, "no such edge");
    edges_.erase(it);
}

void DecoratedTree::remove_node(int id) {
    nodes_.erase(std::remove_if(nodes_.begin(), nodes_.end(),
                                [&](const TreeNode& n) { return n.id == id; }),
                 nodes_.end());
    edges_.erase(std::remove_if(edges_.begin(), edges_.end(),
                                [&](const auto& e) { return e.first == id || e.second == id; }),
                 edges_.end());
}

bool DecoratedTree::has_node(int id) const {
    return std::any_of(nodes_.begin(), nodes_.end(),
                       [&](const TreeNode& n) { return n.id == id; });
}

TreeNode& DecoratedTree::node(int id) {
    for (TreeNode& n : nodes_)
        if (n.id == id) return n;
    fail(Errc::ParseError, "no node " + std::to_string(id));
}

const TreeNode& DecoratedTree::node(int id) const {
    for (const TreeNode& n : nodes_)
        if (n.id == id) return n;
    fail(Errc::ParseError, "no node " + std::to_string(id));
}

std::vector<int> DecoratedTree::neighbors(int id) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges_) {
        if (a == id) out.push_back(b);
        if (b == id) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t DecoratedTree::degree(int id) const { return neighbors(id).size(); }

int DecoratedTree::max_group() const {
    int g = 0;
    for (const TreeNode& n : nodes_) g = std::max(g, n.group);
    return g;
}

void DecoratedTree::validate() const {
    if (nodes_.empty()) fail(Errc::ParseError, "empty tree");
    if (edges_.size() + 1 != nodes_.size()) fail(Errc::ParseError, "tree must be acyclic and connected");
    // connectivity
    std::set<int> seen{nodes_.front().id};
    std::vector<int> stack{nodes_.front().id};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        for (int nb : neighbors(id))
            if (seen.insert(nb).second) stack.push_back(nb);
    }
    if (seen.size() != nodes_.size()) fail(Errc::ParseError, "tree is disconnected");
    for (const TreeNode& n : nodes_) {
        if (n.w < 1) fail(Errc::ParseError, "node weights must be >= 1");
        if (n.group != 0 && n.w < 2) fail(Errc::ContainsMinusOne, "bracketed node of weight 1");
    }
    // each group is a path
    std::map<int, std::vector<int>> groups;
    for (const TreeNode& n : nodes_)
        if (n.group != 0) groups[n.group].push_back(n.id);
    for (const auto& [g, ids] : groups) {
        std::set<int> inset(ids.begin(), ids.end());
        int ends = 0;
        std::set<int> reach{ids.front()};
        std::vector<int> st{ids.front()};
        while (!st.empty()) {
            int id = st.back();
            st.pop_back();
            for (int nb : neighbors(id))
                if (inset.count(nb) && reach.insert(nb).second) st.push_back(nb);
        }
        if (reach.size() != ids.size()) fail(Errc::ParseError, "bracket group is disconnected");
        for (int id : ids) {
            std::size_t din = 0;
            for (int nb : neighbors(id)) din += inset.count(nb) ? 1 : 0;
            if (din > 2) fail(Errc::ParseError, "bracket group is not a path");
            if (din <= 1) ++ends;
        }
        if (ids.size() > 1 && ends != 2) fail(Errc::ParseError, "bracket group is not a path");
    }
}

// ---------------------------------------------------------------------------
// Isomorphism
// ---------------------------------------------------------------------------

namespace {

bool iso_extend(const DecoratedTree& a, const DecoratedTree& b, std::map<int, int>& match,
                std::map<int, int>& rmatch) {
    if (match.size() == a.nodes().size()) {
        // group partition must correspond
        std::map<int, int> gmap;
        for (const auto& [x, y] : match) {
            int ga = a.node(x).group;
            int gb = b.node(y).group;
            if ((ga == 0) != (gb == 0)) return false;
            if (ga == 0) continue;
            auto [it, fresh] = gmap.try_emplace(ga, gb);
            if (!fresh && it->second != gb) return false;
        }
        std::set<int> image;
        for (const auto& [ga, gb] : gmap)
            if (!image.insert(gb).second) return false;
        return true;
    }
    // prefer a node adjacent to the matched set
    int pick = -1;
    for (const TreeNode& n : a.nodes()) {
        if (match.count(n.id)) continue;
        bool adj = false;
        for (int nb : a.neighbors(n.id)) adj = adj || match.count(nb);
        if (adj || pick == -1) {
            pick = n.id;
            if (adj) break;
        }
    }
    const TreeNode& an = a.node(pick);
    for (const TreeNode& bn : b.nodes()) {
        if (rmatch.count(bn.id)) continue;
        if (bn.w != an.w || (bn.group == 0) != (an.group == 0)) continue;
        if (b.degree(bn.id) != a.degree(pick)) continue;
        bool ok = true;
        for (int nb : a.neighbors(pick)) {
            auto it = match.find(nb);
            if (it == match.end()) continue;
            auto bnb = b.neighbors(bn.id);
            if (std::find(bnb.begin(), bnb.end(), it->second) == bnb.end()) ok = false;
        }
        if (!ok) continue;
        match[pick] = bn.id;
        rmatch[bn.id] = pick;
        if (iso_extend(a, b, match, rmatch)) return true;
        match.erase(pick);
        rmatch.erase(bn.id);
    }
    return false;
}

}  // namespace

std::optional<std::map<int, int>> tree_isomorphism(const DecoratedTree& a, const DecoratedTree& b) {
    if (a.nodes().size() != b.nodes().size() || a.edges().size() != b.edges().size())
        return std::nullopt;
    std::map<int, int> match, rmatch;
    if (iso_extend(a, b, match, rmatch)) return match;
    return std::nullopt;
}

bool tree_isomorphic(const DecoratedTree& a, const DecoratedTree& b) {
    return tree_isomorphism(a, b).has_value();
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

DecoratedTree tree_from_json(const std::string& text) {
    DecoratedTree t;
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        for (const auto& jn : j.at("nodes")) {
            int group = jn.contains("bracket") ? jn.at("bracket").get<int>() : 0;
            t.add_node_with_id(jn.at("id").get<int>(), jn.at("w").get<int>(), group);
        }
        for (const auto& je : j.at("edges")) t.add_edge(je.at(0).get<int>(), je.at(1).get<int>());
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(Errc::ParseError, std::string("bad tree JSON: ") + e.what());
    }
    t.validate();
    return t;
}

std::string tree_to_json(const DecoratedTree& t) {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (const TreeNode& n : t.nodes()) {
        nlohmann::json jn{{"id", n.id}, {"w", n.w}};
        if (n.group != 0) jn["bracket"] = n.group;
        j["nodes"].push_back(std::move(jn));
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& [a, b] : t.edges()) j["edges"].push_back({a, b});
    return j.dump();
}

// ---------------------------------------------------------------------------
// Moves
// ---------------------------------------------------------------------------

namespace {

struct AntiflipIds {
    std::vector<int> bracket;  // outer (w+1)-node first
    int one = 0;
};

AntiflipIds tree_antiflip_ids(DecoratedTree& t, int d, int c) {
    const TreeNode& dn = t.node(d);
    if (dn.group != 0) fail(Errc::InvalidSite, "d sits inside a bracket");
    if (dn.w < 3) fail(Errc::InvalidSite, "antiflip needs weight >= 3 at d");
    if (t.node(c).group != 0) fail(Errc::InvalidSite, "c sits inside a bracket");
    auto nbs = t.neighbors(d);
    if (std::find(nbs.begin(), nbs.end(), c) == nbs.end())
        fail(Errc::InvalidSite, "d and c are not adjacent");
    if (nbs.size() > 2) fail(Errc::InvalidSite, "d has more than one neighbor besides c");
    int w = dn.w;
    int outer = -1;
    for (int nb : nbs)
        if (nb != c) outer = nb;

    t.remove_node(d);
    int g = t.max_group() + 1;
    AntiflipIds out;
    out.bracket.push_back(t.add_node(w + 1, g));
    for (int i = 0; i < w - 3; ++i) out.bracket.push_back(t.add_node(2, g));
    out.one = t.add_node(1, 0);
    if (outer != -1) t.add_edge(outer, out.bracket.front());
    for (std::size_t i = 0; i + 1 < out.bracket.size(); ++i)
        t.add_edge(out.bracket[i], out.bracket[i + 1]);
    t.add_edge(out.bracket.back(), out.one);
    t.add_edge(out.one, c);
    t.node(c).w += w - 2;
    return out;
}

}  // namespace

DecoratedTree tree_antiflip(const DecoratedTree& t, int d, int c) {
    DecoratedTree out = t;
    tree_antiflip_ids(out, d, c);
    return out;
}

DecoratedTree tree_blow_down(const DecoratedTree& t, const std::vector<int>& path) {
    if (path.empty()) fail(Errc::NotAPath, "empty path");
    std::set<int> seen;
    for (int id : path)
        if (!seen.insert(id).second) fail(Errc::NotAPath, "path repeats a node");
    DecoratedTree out = t;
    Weights w;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const TreeNode& n = out.node(path[i]);
        if (n.group != 0) fail(Errc::NotAPath, "path crosses an existing bracket");
        if (n.w < 2) fail(Errc::ContainsMinusOne, "path contains a (-1)-curve");
        w.push_back(n.w);
        if (i + 1 < path.size()) {
            auto nbs = out.neighbors(path[i]);
            if (std::find(nbs.begin(), nbs.end(), path[i + 1]) == nbs.end())
                fail(Errc::NotAPath, "consecutive path nodes are not adjacent");
        }
    }
    if (!t0_recognize(w)) fail(Errc::NotT0, "path weights are not a class-T0 chain");
    int g = out.max_group() + 1;
    for (int id : path) out.node(id).group = g;
    return out;
}

DecoratedTree resolve_and_contract(const DecoratedTree& t) {
    DecoratedTree out = t;
    for (const TreeNode& n : t.nodes()) out.node(n.id).group = 0;
    for (;;) {
        int pick = 0;
        bool stuck_branch = false;
        for (const TreeNode& n : out.nodes()) {
            if (n.w != 1) continue;
            if (out.degree(n.id) <= 2) {
                pick = n.id;
                break;
            }
            stuck_branch = true;
        }
        if (pick == 0) {
            if (stuck_branch) fail(Errc::Unsupported, "(-1)-node of degree >= 3 cannot contract");
            return out;
        }
        auto nbs = out.neighbors(pick);
        if (out.nodes().size() == 1) fail(Errc::CollapsedToNothing, "tree contracted away");
        out.remove_node(pick);
        for (int nb : nbs) {
            out.node(nb).w -= 1;
            if (out.node(nb).w < 1) fail(Errc::Unsupported, "contraction drove a weight below 1");
        }
        if (nbs.size() == 2) out.add_edge(nbs[0], nbs[1]);
    }
}

// ---------------------------------------------------------------------------
// Stored templates
// ---------------------------------------------------------------------------

namespace {

TreeMove script_antiflip(int d, int c) {
    TreeMove m;
    m.kind = MoveKind::Antiflip;
    m.site = {d, c};
    return m;
}

TreeMove script_blow_down(std::vector<int> path) {
    TreeMove m;
    m.kind = MoveKind::RationalBlowDown;
    m.site = std::move(path);
    return m;
}

struct NodeSpec {
    int id, w, g;
};

DecoratedTree build(std::vector<NodeSpec> ns, std::vector<std::pair<int, int>> es) {
    DecoratedTree t;
    for (const NodeSpec& n : ns) t.add_node_with_id(n.id, n.w, n.g);
    for (const auto& [a, b] : es) t.add_edge(a, b);
    t.validate();
    return t;
}

std::vector<GammaTemplate> make_templates() {
    std::vector<GammaTemplate> out;
    auto push = [&](int index, DecoratedTree target, std::vector<TreeMove> script,
                    std::string note = "") {
        GammaTemplate g;
        g.index = index;
        g.start = resolve_and_contract(target);
        g.target = std::move(target);
        g.script = std::move(script);
        g.note = std::move(note);
        out.push_back(std::move(g));
    };

    push(1,
         build({{1, 4, 1}, {2, 1, 0}, {3, 2, 2}, {4, 5, 2}, {5, 3, 2}},
               {{1, 2}, {2, 4}, {3, 4}, {4, 5}}),
         {script_antiflip(1, 4), script_blow_down({3, 4, 5})});

    push(2,
         build({{1, 5, 1}, {2, 2, 1}, {3, 1, 0}, {4, 2, 2}, {5, 5, 2}, {6, 3, 2}},
               {{1, 2}, {2, 3}, {3, 5}, {4, 5}, {5, 6}}),
         {script_antiflip(1, 5), script_blow_down({4, 5, 6})});

    push(3,
         build({{1, 4, 1}, {2, 1, 0}, {3, 4, 2}, {4, 1, 0}, {5, 5, 3}, {6, 2, 3}, {7, 3, 3}},
               {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {6, 5}, {5, 7}}),
         {script_antiflip(1, 3), script_antiflip(3, 5), script_blow_down({6, 5, 7})},
         "start center weight is 4 by the contraction oracle; a printed value "
         "of 3 does not contract consistently with the target");

    push(4,
         build({{1, 4, 1}, {2, 1, 0}, {3, 2, 2}, {4, 5, 2}, {5, 1, 0}, {6, 4, 3}},
               {{1, 2}, {2, 4}, {3, 4}, {4, 5}, {5, 6}}),
         {script_antiflip(6, 4), script_antiflip(1, 4), script_blow_down({3, 4})});

    push(5,
         build({{1, 4, 1}, {2, 1, 0}, {3, 2, 2}, {4, 5, 2}, {5, 1, 0}, {6, 4, 3}, {7, 1, 0}, {8, 4, 4}},
               {{1, 2}, {2, 4}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}}),
         {script_antiflip(8, 6), script_antiflip(6, 4), script_antiflip(1, 4),
          script_blow_down({3, 4})});

    push(6,
         build({{1, 4, 1}, {2, 1, 0}, {3, 2, 2}, {4, 5, 2}, {5, 3, 2}, {6, 1, 0}, {7, 4, 3}},
               {{1, 2}, {2, 4}, {3, 4}, {4, 5}, {5, 6}, {6, 7}}),
         {script_antiflip(7, 5), script_antiflip(1, 4), script_blow_down({3, 4, 5})});

    push(7,
         build({{1, 4, 1}, {2, 1, 0}, {3, 6, 2}, {4, 2, 2}, {5, 2, 2}, {6, 3, 2}},
               {{1, 2}, {2, 3}, {4, 3}, {3, 5}, {5, 6}}),
         {script_antiflip(1, 3), script_blow_down({4, 3, 5, 6})});

    push(8,
         build({{1, 3, 1}, {2, 5, 1}, {3, 2, 1}, {4, 1, 0}, {5, 2, 2}, {6, 2, 2}, {7, 6, 2}},
               {{1, 2}, {3, 2}, {2, 4}, {4, 5}, {5, 6}, {6, 7}}),
         {script_antiflip(7, 2), script_blow_down({1, 2, 3})});

    push(9,
         build({{1, 5, 1}, {2, 2, 1}, {3, 1, 0}, {4, 5, 2}, {5, 2, 2}, {6, 1, 0}, {7, 4, 3}},
               {{1, 2}, {2, 3}, {3, 4}, {5, 4}, {4, 6}, {6, 7}}),
         {script_antiflip(1, 4), script_antiflip(7, 4), script_blow_down({5, 4})});

    return out;
}

}  // namespace

const std::vector<GammaTemplate>& gamma_templates() {
    static const std::vector<GammaTemplate> templates = make_templates();
    return templates;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {

// Pruned subtree spanning all bracketed nodes: strip non-bracket leaves.
std::set<int> bracket_span(const DecoratedTree& t) {
    std::set<int> keep;
    for (const TreeNode& n : t.nodes()) keep.insert(n.id);
    for (;;) {
        int drop = 0;
        for (int id : keep) {
            if (t.node(id).group != 0) continue;
            std::size_t deg = 0;
            for (int nb : t.neighbors(id)) deg += keep.count(nb) ? 1 : 0;
            if (deg <= 1) {
                drop = id;
                break;
            }
        }
        if (drop == 0) return keep;
        keep.erase(drop);
    }
}

DecoratedTree induced(const DecoratedTree& t, const std::set<int>& ids) {
    DecoratedTree out;
    for (const TreeNode& n : t.nodes())
        if (ids.count(n.id)) out.add_node_with_id(n.id, n.w, n.group);
    for (const auto& [a, b] : t.edges())
        if (ids.count(a) && ids.count(b)) out.add_edge(a, b);
    return out;
}

// Order the ids of a path subgraph end to end.
std::vector<int> order_path(const DecoratedTree& t, const std::set<int>& ids) {
    if (ids.size() == 1) return {*ids.begin()};
    int end = -1;
    for (int id : ids) {
        std::size_t deg = 0;
        for (int nb : t.neighbors(id)) deg += ids.count(nb) ? 1 : 0;
        if (deg == 1) end = id;
    }
    std::vector<int> out{end};
    std::set<int> seen{end};
    while (out.size() < ids.size()) {
        bool advanced = false;
        for (int nb : t.neighbors(out.back())) {
            if (!ids.count(nb) || seen.count(nb)) continue;
            out.push_back(nb);
            seen.insert(nb);
            advanced = true;
            break;
        }
        if (!advanced) break;
    }
    return out;
}

}  // namespace

GammaClass gamma_classify(const DecoratedTree& t) {
    t.validate();
    GammaClass out;
    bool any_bracket = std::any_of(t.nodes().begin(), t.nodes().end(),
                                   [](const TreeNode& n) { return n.group != 0; });
    if (!any_bracket) {
        out.kind = GammaKind::Linear;
        return out;
    }
    std::set<int> span = bracket_span(t);
    bool is_path = true;
    for (int id : span) {
        std::size_t deg = 0;
        for (int nb : t.neighbors(id)) deg += span.count(nb) ? 1 : 0;
        if (deg > 2) is_path = false;
    }
    if (is_path) {
        std::vector<int> path = order_path(t, span);
        if (path.size() != span.size()) {
            out.kind = GammaKind::Unsupported;
            return out;
        }
        // extend through plain chain nodes at both ends
        auto extend = [&](std::vector<int>& p, bool front) {
            for (;;) {
                int end = front ? p.front() : p.back();
                int prev = p.size() > 1 ? (front ? p[1] : p[p.size() - 2]) : -1;
                int next = -1;
                for (int nb : t.neighbors(end)) {
                    if (nb == prev) continue;
                    if (std::find(p.begin(), p.end(), nb) != p.end()) continue;
                    if (t.node(nb).group != 0 || t.degree(nb) > 2) continue;
                    if (next != -1) return;  // end is a branch node; stop
                    next = nb;
                }
                if (next == -1 || t.degree(end) > 2) return;
                if (front)
                    p.insert(p.begin(), next);
                else
                    p.push_back(next);
            }
        };
        extend(path, false);
        extend(path, true);
        out.kind = GammaKind::Linear;
        out.chain_ids = std::move(path);
        return out;
    }
    DecoratedTree gamma = induced(t, span);
    for (const GammaTemplate& tpl : gamma_templates()) {
        if (auto m = tree_isomorphism(tpl.target, gamma)) {
            out.kind = GammaKind::Gamma;
            out.index = tpl.index;
            out.match = std::move(*m);
            return out;
        }
    }
    out.kind = GammaKind::Unsupported;
    return out;
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

namespace {

// Chain-trace lifting: ids of the tree nodes backing each chain segment.
struct LiftState {
    DecoratedTree tree;
    std::vector<std::vector<int>> seg_ids;
};

void lift_move(LiftState& st, const Move& m, TreeMove& out) {
    out.kind = m.kind;
    out.before = st.tree;
    if (m.kind == MoveKind::RationalBlowDown) {
        std::vector<int> path;
        for (std::size_t i = m.pos; i < m.pos + m.count; ++i)
            for (int id : st.seg_ids[i]) path.push_back(id);
        st.tree = tree_blow_down(st.tree, path);
        std::vector<std::vector<int>> ns(st.seg_ids.begin(), st.seg_ids.begin() + static_cast<long>(m.pos));
        ns.push_back(path);
        ns.insert(ns.end(), st.seg_ids.begin() + static_cast<long>(m.pos + m.count), st.seg_ids.end());
        st.seg_ids = std::move(ns);
        out.site = path;
        out.after = st.tree;
        return;
    }
    if (m.kind != MoveKind::Antiflip || m.site.orientation != Orientation::LeftToRight)
        fail(Errc::Unsupported, "only blow-downs and left-to-right antiflips lift to trees");
    std::size_t p = m.site.position;
    if (m.site.kind == FlipCase::B) {
        int d = st.seg_ids[p][0];
        int c = st.seg_ids[p + 1][0];
        AntiflipIds ids = tree_antiflip_ids(st.tree, d, c);
        std::vector<std::vector<int>> ns(st.seg_ids.begin(), st.seg_ids.begin() + static_cast<long>(p));
        ns.push_back(ids.bracket);
        ns.push_back({ids.one});
        ns.push_back({c});
        ns.insert(ns.end(), st.seg_ids.begin() + static_cast<long>(p + 2), st.seg_ids.end());
        st.seg_ids = std::move(ns);
        out.site = {d, c};
    } else {
        // case A: v-[G]-c' regroups v and G with fresh trailing 2s
        int v_id = st.seg_ids[p][0];
        std::vector<int> g_ids = st.seg_ids[p + 1];
        int c_id = st.seg_ids[p + 2][0];
        int v = st.tree.node(v_id).w;
        int g = st.tree.max_group() + 1;
        st.tree.node(v_id).group = g;
        for (int id : g_ids) st.tree.node(id).group = g;
        st.tree.node(g_ids.back()).w += 1;
        // splice the fresh tail between the bracket and c
        st.tree.remove_edge(g_ids.back(), c_id);
        std::vector<int> bracket = {v_id};
        bracket.insert(bracket.end(), g_ids.begin(), g_ids.end());
        int prev = g_ids.back();
        for (int i = 0; i < v - 2; ++i) {
            int id = st.tree.add_node(2, g);
            bracket.push_back(id);
            st.tree.add_edge(prev, id);
            prev = id;
        }
        int one = st.tree.add_node(1, 0);
        st.tree.add_edge(prev, one);
        st.tree.add_edge(one, c_id);
        st.tree.node(c_id).w += v - 1;
        std::vector<std::vector<int>> ns(st.seg_ids.begin(), st.seg_ids.begin() + static_cast<long>(p));
        ns.push_back(bracket);
        ns.push_back({one});
        ns.push_back({c_id});
        ns.insert(ns.end(), st.seg_ids.begin() + static_cast<long>(p + 3), st.seg_ids.end());
        st.seg_ids = std::move(ns);
        out.site = {v_id, c_id};
    }
    out.after = st.tree;
}

DecoratedChain chain_of_path(const DecoratedTree& t, const std::vector<int>& ids) {
    std::vector<Segment> segs;
    std::size_t i = 0;
    while (i < ids.size()) {
        const TreeNode& n = t.node(ids[i]);
        if (n.group == 0) {
            segs.push_back(Segment::plain(n.w));
            ++i;
            continue;
        }
        Weights w;
        std::size_t j = i;
        while (j < ids.size() && t.node(ids[j]).group == n.group) w.push_back(t.node(ids[j++]).w);
        segs.push_back(Segment::bracket(std::move(w)));
        i = j;
    }
    return DecoratedChain(std::move(segs));
}

TreeTrace linear_trace(const DecoratedTree& t, const std::vector<int>& chain_ids) {
    TreeTrace out;
    if (chain_ids.empty()) {
        out.start = t;
        out.end = t;
        return out;
    }
    // all bracketed nodes must lie on the path
    std::set<int> onpath(chain_ids.begin(), chain_ids.end());
    for (const TreeNode& n : t.nodes())
        if (n.group != 0 && !onpath.count(n.id))
            fail(Errc::Unsupported, "bracket reaches outside the embedded chain");

    // deterministic orientation: read the path in whichever direction gives
    // the lexicographically smaller chain text
    std::vector<int> ids = chain_ids;
    std::vector<int> rev(ids.rbegin(), ids.rend());
    if (format_chain(chain_of_path(t, rev)) < format_chain(chain_of_path(t, ids))) ids = rev;
    DecoratedChain chain = chain_of_path(t, ids);
    MoveTrace mt = from_minimal(chain);

    LiftState st;
    st.tree = resolve_and_contract(t);
    for (int id : ids)
        if (st.tree.has_node(id)) st.seg_ids.push_back({id});
    Weights start_w;
    for (const auto& ids : st.seg_ids) start_w.push_back(st.tree.node(ids[0]).w);
    if (start_w != flatten(mt.start))
        fail(Errc::Unsupported, "tree contraction disagrees with the chain driver");

    out.start = st.tree;
    for (const Move& m : mt.moves) {
        TreeMove tm;
        lift_move(st, m, tm);
        out.moves.push_back(std::move(tm));
    }
    out.end = st.tree;
    if (!tree_isomorphic(out.end, t))
        fail(Errc::Unsupported, "lifted trace does not reproduce the input tree");
    return out;
}

}  // namespace

TreeTrace toi_trace(const DecoratedTree& t) {
    GammaClass cls = gamma_classify(t);
    if (cls.kind == GammaKind::Unsupported)
        fail(Errc::Unsupported, "tree shape is neither linear nor one of the nine templates");
    if (cls.kind == GammaKind::Linear) return linear_trace(t, cls.chain_ids);

    const GammaTemplate& tpl = gamma_templates()[static_cast<std::size_t>(cls.index - 1)];
    TreeTrace out;
    out.start = resolve_and_contract(t);
    DecoratedTree cur = out.start;
    for (const TreeMove& sm : tpl.script) {
        TreeMove m;
        m.kind = sm.kind;
        m.before = cur;
        for (int id : sm.site) m.site.push_back(cls.match.at(id));
        if (sm.kind == MoveKind::Antiflip)
            cur = tree_antiflip(cur, m.site[0], m.site[1]);
        else
            cur = tree_blow_down(cur, m.site);
        m.after = cur;
        out.moves.push_back(std::move(m));
    }
    out.end = cur;
    if (!tree_isomorphic(out.end, t)) fail(Errc::Unsupported, "script replay mismatch");
    return out;
}

std::string tree_trace_to_json(const TreeTrace& t) {
    nlohmann::json j;
    j["start"] = nlohmann::json::parse(tree_to_json(t.start));
    j["end"] = nlohmann::json::parse(tree_to_json(t.end));
    j["moves"] = nlohmann::json::array();
    for (const TreeMove& m : t.moves) {
        std::string site = "nodes:";
        for (std::size_t i = 0; i < m.site.size(); ++i) {
            if (i) site += ',';
            site += std::to_string(m.site[i]);
        }
        j["moves"].push_back({{"kind", move_kind_name(m.kind)},
                              {"site", site},
                              {"before", nlohmann::json::parse(tree_to_json(m.before))},
                              {"after", nlohmann::json::parse(tree_to_json(m.after))}});
    }
    return j.dump(2);
}

}  // namespace mmp
