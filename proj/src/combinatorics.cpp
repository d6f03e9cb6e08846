#include "quadmoduli/combinatorics.hpp"

#include "quadmoduli/fibers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <set>
#include <thread>

namespace quadmoduli {

bool IntersectionGraph::adjacent(int a, int b) const {
    auto e = std::minmax(a, b);
    return std::find(edges.begin(), edges.end(), std::pair<int, int>(e.first, e.second)) != edges.end();
}

std::vector<int> IntersectionGraph::neighbors(int a) const {
    std::vector<int> out;
    for (const auto &[u, v] : edges) {
        if (u == a)
            out.push_back(v);
        else if (v == a)
            out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> IntersectionGraph::solid_neighbors(int a) const {
    std::vector<int> out;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (kinds[k] != EdgeKind::Solid)
            continue;
        if (edges[k].first == a)
            out.push_back(edges[k].second);
        else if (edges[k].second == a)
            out.push_back(edges[k].first);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int IntersectionGraph::index_of(const std::string &name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw Error(ErrorKind::InvalidInput, "unknown vertex " + name);
    return static_cast<int>(it - names.begin());
}

IntersectionGraph IntersectionGraph::without_edge(int a, int b) const {
    IntersectionGraph g = *this;
    auto e = std::minmax(a, b);
    for (std::size_t k = 0; k < g.edges.size(); ++k)
        if (g.edges[k] == std::pair<int, int>(e.first, e.second)) {
            g.edges.erase(g.edges.begin() + static_cast<std::ptrdiff_t>(k));
            g.kinds.erase(g.kinds.begin() + static_cast<std::ptrdiff_t>(k));
            break;
        }
    return g;
}

namespace {

IntersectionGraph label_graph(const std::set<std::pair<int, int>> &edges) {
    IntersectionGraph g;
    for (int k = 0; k < 12; ++k)
        g.names.push_back(ConeLabel::from_ordinal(k).name());
    g.edges.assign(edges.begin(), edges.end());
    g.kinds.assign(g.edges.size(), EdgeKind::Solid);
    return g;
}

}  // namespace

IntersectionGraph level_graph() {
    const ConeLabel u1{Family::U, 1}, w1{Family::W, 1};
    const std::vector<std::pair<ConeLabel, ConeLabel>> seeds = {
        {u1, {Family::V, 1}}, {u1, w1}, {u1, {Family::V, 3}}, {u1, {Family::W, 4}},
        {w1, {Family::V, 1}}, {w1, {Family::U, 2}}, {w1, {Family::V, 4}},
    };
    std::set<std::pair<int, int>> edges;
    for (const auto &g : group_elements(4))
        for (const auto &[a, b] : seeds) {
            int x = act(g, a).ordinal(), y = act(g, b).ordinal();
            edges.insert({std::min(x, y), std::max(x, y)});
        }
    return label_graph(edges);
}

IntersectionGraph boundary_graph() {
    IntersectionGraph g = level_graph();
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        auto a = ConeLabel::from_ordinal(g.edges[k].first);
        auto b = ConeLabel::from_ordinal(g.edges[k].second);
        if (a.family == Family::W)
            std::swap(a, b);
        bool grey = b.family == Family::W && a.family != Family::W && a.index == b.index;
        g.kinds[k] = grey ? EdgeKind::Removed : EdgeKind::Solid;
    }
    return g;
}

std::vector<std::vector<int>> cycles(const IntersectionGraph &g, int length) {
    if (length < 3)
        throw Error(ErrorKind::InvalidInput, "cycle length must be at least 3");
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    std::vector<bool> used(static_cast<std::size_t>(g.size()), false);
    std::function<void(int)> extend = [&](int v) {
        if (static_cast<int>(path.size()) == length) {
            if (!g.adjacent(v, path.front()))
                return;
            auto key = path;
            std::sort(key.begin(), key.end());
            if (seen.insert(key).second)
                out.push_back(path);
            return;
        }
        for (int w : g.neighbors(v)) {
            if (used[static_cast<std::size_t>(w)] || w < path.front())
                continue;
            used[static_cast<std::size_t>(w)] = true;
            path.push_back(w);
            extend(w);
            path.pop_back();
            used[static_cast<std::size_t>(w)] = false;
        }
    };
    for (int v = 0; v < g.size(); ++v) {
        path = {v};
        used[static_cast<std::size_t>(v)] = true;
        extend(v);
        used[static_cast<std::size_t>(v)] = false;
    }
    return out;
}

std::vector<int> CuboctahedronModel::cones_containing(const Vec3 &p, double tol) const {
    std::array<double, 12> dots{};
    for (std::size_t k = 0; k < 12; ++k)
        dots[k] = p[0] * vertices[k][0] + p[1] * vertices[k][1] + p[2] * vertices[k][2];
    double best = *std::max_element(dots.begin(), dots.end());
    double scale = std::max(1.0, std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]));
    std::vector<int> out;
    for (std::size_t k = 0; k < 12; ++k)
        if (dots[k] >= best - tol * scale)
            out.push_back(static_cast<int>(k));
    return out;
}

int CuboctahedronModel::vertex_index(const Vec3 &v) const {
    for (std::size_t k = 0; k < 12; ++k)
        if (std::abs(v[0] - vertices[k][0]) + std::abs(v[1] - vertices[k][1]) + std::abs(v[2] - vertices[k][2]) < 1e-9)
            return static_cast<int>(k);
    return -1;
}

CuboctahedronModel cuboctahedron_model() {
    CuboctahedronModel m;
    std::size_t k = 0;
    for (int zero = 0; zero < 3; ++zero)
        for (int a : {1, -1})
            for (int b : {1, -1}) {
                Vec3 v{};
                v[static_cast<std::size_t>((zero + 1) % 3)] = a;
                v[static_cast<std::size_t>((zero + 2) % 3)] = b;
                m.vertices[k++] = v;
            }
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < 12; ++i)
        for (int j = i + 1; j < 12; ++j) {
            double d = 0.0;
            for (std::size_t c = 0; c < 3; ++c) {
                double x = m.vertices[static_cast<std::size_t>(i)][c] - m.vertices[static_cast<std::size_t>(j)][c];
                d += x * x;
            }
            if (std::abs(d - 2.0) < 1e-12)
                edges.insert({i, j});
        }
    for (const auto &v : m.vertices) {
        auto f = [](double x) { return x == 0.0 ? std::string("0") : (x > 0 ? "1" : "-1"); };
        m.graph.names.push_back("(" + f(v[0]) + "," + f(v[1]) + "," + f(v[2]) + ")");
    }
    m.graph.edges.assign(edges.begin(), edges.end());
    m.graph.kinds.assign(m.graph.edges.size(), EdgeKind::Solid);
    return m;
}

Vec3 model_action(const DihedralElement &g, const Vec3 &p) {
    if (g.n != 4)
        throw Error(ErrorKind::Unsupported, "the model action is defined for n = 4");
    auto inv = [](const Vec3 &q) {
        double r2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
        if (r2 == 0.0)
            throw Error(ErrorKind::Domain, "the origin maps to infinity");
        return r2;
    };
    Vec3 q = p;
    if (g.reflection) {
        double r2 = inv(q);
        q = {q[0] / r2, q[2] / r2, q[1] / r2};
    }
    int k = ((g.rotation % 4) + 4) % 4;
    for (int i = 0; i < k; ++i) {
        double r2 = inv(q);
        q = {-q[0] / r2, -q[2] / r2, q[1] / r2};
    }
    return q;
}

void for_each_isomorphism(const IntersectionGraph &a, const IntersectionGraph &b,
                          const std::function<bool(const std::vector<int> &)> &visit) {
    int n = a.size();
    if (n != b.size() || a.edges.size() != b.edges.size())
        return;
    std::vector<std::vector<int>> na(static_cast<std::size_t>(n)), nb(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        na[static_cast<std::size_t>(v)] = a.neighbors(v);
        nb[static_cast<std::size_t>(v)] = b.neighbors(v);
    }
    std::vector<int> order;
    std::vector<bool> queued(static_cast<std::size_t>(n), false);
    for (int root = 0; root < n; ++root) {
        if (queued[static_cast<std::size_t>(root)])
            continue;
        queued[static_cast<std::size_t>(root)] = true;
        order.push_back(root);
        for (std::size_t i = order.size() - 1; i < order.size(); ++i)
            for (int w : na[static_cast<std::size_t>(order[i])])
                if (!queued[static_cast<std::size_t>(w)]) {
                    queued[static_cast<std::size_t>(w)] = true;
                    order.push_back(w);
                }
    }
    std::vector<int> map(static_cast<std::size_t>(n), -1);
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    bool stop = false;
    std::function<void(std::size_t)> place = [&](std::size_t depth) {
        if (stop)
            return;
        if (depth == order.size()) {
            stop = !visit(map);
            return;
        }
        int v = order[depth];
        for (int c = 0; c < n && !stop; ++c) {
            if (taken[static_cast<std::size_t>(c)] ||
                na[static_cast<std::size_t>(v)].size() != nb[static_cast<std::size_t>(c)].size())
                continue;
            bool ok = true;
            for (std::size_t d = 0; d < depth && ok; ++d) {
                int u = order[d];
                ok = a.adjacent(u, v) == b.adjacent(map[static_cast<std::size_t>(u)], c);
            }
            if (!ok)
                continue;
            map[static_cast<std::size_t>(v)] = c;
            taken[static_cast<std::size_t>(c)] = true;
            place(depth + 1);
            taken[static_cast<std::size_t>(c)] = false;
            map[static_cast<std::size_t>(v)] = -1;
        }
    };
    place(0);
}

std::optional<std::vector<int>> graph_isomorphic(const IntersectionGraph &a, const IntersectionGraph &b) {
    std::optional<std::vector<int>> found;
    for_each_isomorphism(a, b, [&](const std::vector<int> &m) {
        found = m;
        return false;
    });
    return found;
}

Shape sample_level_shape(double s, const ConeLabel &label, std::mt19937_64 &rng) {
    auto ref = reference_label(label);
    FiberFamily fam = ref.family == Family::W ? FiberFamily::W : FiberFamily::U;
    Complex z4 = omega_region(fam, s).sample(rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Shape z = fiber_to_shape(fam, {s, z4, unit(rng)});
    return apply(reference_element(label), z);
}

bool VerificationReport::pass() const {
    return std::all_of(records.begin(), records.end(), [](const WitnessRecord &r) { return r.pass; });
}

std::size_t VerificationReport::count(const std::string &kind, bool only_passing) const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [&](const WitnessRecord &r) {
        return r.kind == kind && (!only_passing || r.pass);
    }));
}

std::vector<nlohmann::json> VerificationReport::json_lines() const {
    std::vector<nlohmann::json> out;
    for (const auto &r : records) {
        nlohmann::json j;
        j["schema"] = 1;
        j["suite"] = "bigons";
        j["s"] = s;
        j["kind"] = r.kind;
        std::vector<std::string> labels;
        for (const auto &l : r.claimed)
            labels.push_back(l.name());
        j["edge"] = labels;
        if (r.kind == "non_edge") {
            j["samples"] = r.samples;
            j["violations"] = r.violations;
        } else {
            nlohmann::json w = nlohmann::json::array();
            for (std::size_t k = 0; k < r.witness.n(); ++k)
                w.push_back({r.witness[k].real(), r.witness[k].imag()});
            j["witness"] = w;
            nlohmann::json m;
            for (int k = 0; k < 12; ++k)
                m[ConeLabel::from_ordinal(k).name()] = r.residuals[static_cast<std::size_t>(k)];
            j["memberships"] = m;
        }
        if (!r.note.empty())
            j["note"] = r.note;
        j["pass"] = r.pass;
        out.push_back(std::move(j));
    }
    return out;
}

namespace {

struct ReferenceWitness {
    std::string kind;
    std::vector<ConeLabel> labels;
    Complex base;
    double t;
};

// Faces of the U1 fiber bundle: t = 0 and t = 1 ends, bottom line Im z4 = s and top arc |z4| = 1.
std::vector<ReferenceWitness> reference_witnesses(double s) {
    const double th = std::asin(s);
    Complex interior = uniformize_base_inverse(FiberFamily::U, s, Complex(-0.13, 0.71));
    Complex bottom(-0.31 * std::cos(th), s);
    Complex top = std::polar(1.0, th + 0.37 * (std::numbers::pi - 2.0 * th));
    const ConeLabel U1{Family::U, 1}, U3{Family::U, 3}, V1{Family::V, 1}, V3{Family::V, 3}, V4{Family::V, 4},
        W1{Family::W, 1}, W4{Family::W, 4};
    // trapezoid: z3 in the middle of the horizontal piece of the fiber
    auto fiber = gamma_curve(FiberFamily::U, s, bottom);
    double mid = fiber.collapsed() ? 0.5 : 0.5 * piece_length(fiber.pieces.front()) / fiber.length();
    return {
        {"edge", {U1, W1}, interior, 0.0},
        {"edge", {U1, V1}, bottom, mid},
        {"edge", {U1, V3}, interior, 1.0},
        {"edge", {U1, W4}, top, 0.5},
        {"triangle", {U1, V1, W1}, bottom, 0.0},
        {"triangle", {U1, V3, W4}, top, 1.0},
        {"square", {U1, V1, U3, V3}, bottom, 1.0},
        {"square", {U1, V4, W1, W4}, top, 0.0},
    };
}

std::vector<ConeLabel> sorted(std::vector<ConeLabel> v) {
    std::sort(v.begin(), v.end());
    return v;
}

WitnessRecord check_witness(const std::string &kind, const std::vector<ConeLabel> &claimed, const Shape &z,
                            const Tolerance &tol) {
    WitnessRecord r;
    r.kind = kind;
    r.claimed = sorted(claimed);
    r.witness = z;
    bool ok = true;
    for (int k = 0; k < 12; ++k) {
        auto l = ConeLabel::from_ordinal(k);
        double res = closure_residual(z, l);
        r.residuals[static_cast<std::size_t>(k)] = res;
        bool want = std::find(claimed.begin(), claimed.end(), l) != claimed.end();
        ok = ok && (want == (res <= tol.class_tol));
    }
    r.pass = ok;
    return r;
}

int thread_cap(int requested) {
    int cap = std::max(1, requested);
    if (const char *env = std::getenv("QUADMODULI_THREADS")) {
        int e = std::atoi(env);
        if (e > 0)
            cap = std::min(cap, e);
    }
    return cap;
}

}  // namespace

VerificationReport verify_level_decomposition(double s, int n_samples, const Tolerance &tol, std::uint64_t seed,
                                              int threads) {
    if (!(s > 0.0 && s < 1.0))
        throw Error(ErrorKind::Domain, "level must lie in (0, 1)");
    if (n_samples < 0)
        throw Error(ErrorKind::InvalidInput, "sample count must be non-negative");
    VerificationReport rep;
    rep.s = s;
    IntersectionGraph graph = level_graph();
    auto refs = reference_witnesses(s);
    auto group = group_elements(4);

    auto witness_for = [&](const std::string &kind, const std::vector<ConeLabel> &target) {
        auto want = sorted(target);
        for (const auto &ref : refs) {
            if (ref.kind != kind)
                continue;
            for (const auto &g : group) {
                std::vector<ConeLabel> moved;
                for (const auto &l : ref.labels)
                    moved.push_back(act(g, l));
                if (sorted(moved) != want)
                    continue;
                try {
                    Shape z = apply(g, fiber_to_shape(FiberFamily::U, {s, ref.base, ref.t}));
                    return check_witness(kind, target, z, tol);
                } catch (const Error &e) {
                    WitnessRecord r;
                    r.kind = kind;
                    r.claimed = want;
                    r.note = e.what();
                    return r;
                }
            }
        }
        WitnessRecord r;
        r.kind = kind;
        r.claimed = want;
        r.note = "no reference witness in the orbit";
        return r;
    };

    auto to_labels = [](const std::vector<int> &idx) {
        std::vector<ConeLabel> out;
        for (int k : idx)
            out.push_back(ConeLabel::from_ordinal(k));
        return out;
    };
    for (const auto &[a, b] : graph.edges)
        rep.records.push_back(witness_for("edge", to_labels({a, b})));
    for (const auto &c : cycles(graph, 3))
        rep.records.push_back(witness_for("triangle", to_labels(c)));
    for (const auto &c : cycles(graph, 4))
        rep.records.push_back(witness_for("square", to_labels(c)));
    auto q = special_points(s);
    auto labels = all_labels();
    std::vector<ConeLabel> all(labels.begin(), labels.end());
    rep.records.push_back(check_witness("all", all, q.q1, tol));
    rep.records.push_back(check_witness("all", all, q.q2, tol));

    std::vector<std::vector<WitnessRecord>> per_label(12);
    auto work = [&](int k) {
        ConeLabel a = ConeLabel::from_ordinal(k);
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(std::lround(s * 1e6))};
        std::mt19937_64 rng(seq);
        std::vector<int> others;
        for (int b = 0; b < 12; ++b)
            if (b != k && !graph.adjacent(k, b))
                others.push_back(b);
        std::vector<std::size_t> bad(others.size(), 0);
        std::size_t failures = 0;
        for (int i = 0; i < n_samples; ++i) {
            Shape z;
            try {
                z = sample_level_shape(s, a, rng);
            } catch (const Error &) {
                ++failures;
                continue;
            }
            for (std::size_t j = 0; j < others.size(); ++j)
                if (closure_residual(z, ConeLabel::from_ordinal(others[j])) <= tol.class_tol)
                    ++bad[j];
        }
        for (std::size_t j = 0; j < others.size(); ++j) {
            WitnessRecord r;
            r.kind = "non_edge";
            r.claimed = {a, ConeLabel::from_ordinal(others[j])};
            r.samples = static_cast<std::size_t>(n_samples) - failures;
            r.violations = bad[j];
            r.pass = bad[j] == 0 && failures == 0;
            if (failures)
                r.note = std::to_string(failures) + " samples could not be constructed";
            per_label[static_cast<std::size_t>(k)].push_back(std::move(r));
        }
    };
    int nt = std::min(thread_cap(threads), 12);
    if (nt <= 1) {
        for (int k = 0; k < 12; ++k)
            work(k);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                for (int k = t; k < 12; k += nt)
                    work(k);
            });
        for (auto &th : pool)
            th.join();
    }
    for (auto &v : per_label)
        for (auto &r : v)
            rep.records.push_back(std::move(r));
    return rep;
}

}  // namespace quadmoduli
