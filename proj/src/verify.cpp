#include "quadmoduli/verify.hpp"

#include "quadmoduli/combinatorics.hpp"
#include "quadmoduli/dihedral.hpp"
#include "quadmoduli/fibers.hpp"
#include "quadmoduli/height.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>

namespace quadmoduli {

namespace {

using json = nlohmann::json;

json line(const std::string &suite, const std::string &name) {
    json j;
    j["schema"] = kSchemaVersion;
    j["suite"] = suite;
    j["case"] = name;
    return j;
}

bool simple_positive(const LabeledPolygon &p) {
    try {
        return is_simple(p) && orientation(p) == Orientation::Positive;
    } catch (const Error &) {
        return false;
    }
}

DihedralElement random_element(std::mt19937_64 &rng) {
    auto g = group_elements(4);
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    return g[pick(rng)];
}

// Collapse vertex j of y onto target; accepted when the nearly collapsed polygon stays simple and positive.
std::optional<Shape> collapse(const Shape &y, std::size_t j, Complex target) {
    auto pre = y.polygon();
    pre.vertices[j] = target + 1e-6 * (y[j] - target);
    if (!simple_positive(pre))
        return std::nullopt;
    auto lim = y.polygon();
    lim.vertices[j] = target;
    return normalize(lim);
}

}  // namespace

Shape random_quadrilateral(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> ux(-1.0, 2.0), uy(-1.5, 1.5);
    for (;;) {
        Shape z = Shape::from_tail({Complex(ux(rng), uy(rng)), Complex(ux(rng), uy(rng))});
        if (simple_positive(z.polygon()))
            return z;
    }
}

Shape random_polygon(int n, std::mt19937_64 &rng) {
    if (n < 3)
        throw Error(ErrorKind::InvalidInput, "polygons need n >= 3");
    std::uniform_real_distribution<double> jitter(-0.3, 0.3), radius(0.6, 1.4);
    for (;;) {
        LabeledPolygon p;
        for (int k = 0; k < n; ++k) {
            double a = 2.0 * std::numbers::pi * (k + 0.5 + jitter(rng)) / n;
            p.vertices.push_back(std::polar(radius(rng), a));
        }
        if (simple_positive(p))
            return normalize(p);
    }
}

BoundarySample random_boundary_shape(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<std::size_t> vertex(0, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        Shape y = random_quadrilateral(rng);
        switch (kind(rng)) {
        case 0: {
            auto rep = height_report(y);
            const auto &p = rep.r_pairs.front();
            std::size_t j = static_cast<std::size_t>(p.vertex - 1);
            std::size_t a = static_cast<std::size_t>(p.side - 1);
            double len = std::abs(y[a + 1] - y[a]);
            if (std::min(std::abs(p.foot - y[a]), std::abs(p.foot - y[a + 1])) < 1e-6 * len)
                continue;
            if (auto z = collapse(y, j, p.foot))
                return {*z, BoundaryKind::Flag};
            break;
        }
        case 1: {
            std::size_t j = vertex(rng);
            if (auto z = collapse(y, j, y[j + 1]))
                return {*z, BoundaryKind::Triangle};
            break;
        }
        case 2: {
            if (unit(rng) < 0.05)
                return {Shape::from_tail({0.0, 1.0}), BoundaryKind::Wedge};
            std::size_t j = vertex(rng);
            if (auto z = collapse(y, j, y[j + 2]))
                return {*z, BoundaryKind::Wedge};
            break;
        }
        default: {
            double a = 2.0 * std::numbers::pi * unit(rng);
            Complex rot = std::polar(1.0, a);
            LabeledPolygon p;
            for (std::size_t k = 0; k < 4; ++k)
                p.vertices.push_back((y[k] * rot).real());
            int turns = 0;
            for (std::size_t k = 0; k < 4; ++k) {
                double in = p[k + 1].real() - p[k].real(), next = p[k + 2].real() - p[k + 1].real();
                turns += (in > 0.0) != (next > 0.0);
            }
            auto kind_out = turns <= 2 ? BoundaryKind::FourSegmentConvex : BoundaryKind::FourSegmentNonConvex;
            try {
                return {normalize(p), kind_out};
            } catch (const Error &) {
                break;
            }
        }
        }
    }
}

ScanVerdict bad_set_scan(const Shape &z, int per_side, double in_band, double out_band) {
    auto sides = side_lengths(z);
    double ell = *std::max_element(sides.begin(), sides.end());
    struct Best {
        double d;
        Complex at;
    };
    auto scan = [&](Complex p, Complex a, Complex b) {
        Best best{std::abs(p - a), a};
        for (int i = 1; i <= per_side; ++i) {
            Complex q = a + (b - a) * (static_cast<double>(i) / per_side);
            double d = std::abs(p - q);
            if (d < best.d)
                best = {d, q};
        }
        return best;
    };
    std::array<std::pair<Best, Best>, 4> per_vertex;
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < 4; ++j) {
        auto first = scan(z[j], z[j + 1], z[j + 2]);
        auto second = scan(z[j], z[j + 2], z[j + 3]);
        per_vertex[j] = {first, second};
        r = std::min({r, first.d, second.d});
    }
    bool in = false, ambiguous = false;
    for (const auto &[a, b] : per_vertex) {
        if (std::abs(a.at - b.at) <= 1e-12 * ell)
            continue;
        double excess = (std::max(a.d, b.d) - r) / ell;
        if (excess <= in_band)
            in = true;
        else if (excess < out_band)
            ambiguous = true;
    }
    if (in)
        return ScanVerdict::In;
    return ambiguous ? ScanVerdict::Ambiguous : ScanVerdict::Out;
}

Shape random_bad_shape(double s, std::mt19937_64 &rng) {
    double c = std::cos(std::asin(s));
    std::uniform_real_distribution<double> ux(-c, c);
    Shape z = fiber_to_shape(FiberFamily::U, {s, Complex(ux(rng), s), 0.0});
    return apply(random_element(rng), z);
}

std::vector<std::string> suite_names() { return {"group", "eigen", "bigons", "boundary", "fibers", "bad-set"}; }

namespace {

SuiteResult suite_group(std::uint64_t seed) {
    SuiteResult out;
    std::mt19937_64 rng(seed);
    for (int n = 3; n <= 8; ++n) {
        double err = 0.0;
        auto sigma = DihedralElement::sigma(n), tau = DihedralElement::tau(n);
        auto group = group_elements(n);
        for (int i = 0; i < 200; ++i) {
            Shape z = random_polygon(n, rng);
            Shape a = z;
            for (int k = 0; k < n; ++k)
                a = apply(sigma, a);
            err = std::max(err, chart_distance(a, z));
            err = std::max(err, chart_distance(apply(tau, apply(tau, z)), z));
            Shape ts = apply(tau, apply(sigma, z));
            err = std::max(err, chart_distance(apply(tau, apply(sigma, ts)), z));
            auto g = group[static_cast<std::size_t>(i) % group.size()];
            auto h = group[static_cast<std::size_t>(i * 7 + 3) % group.size()];
            err = std::max(err, chart_distance(apply(g * h, z), apply(g, apply(h, z))));
        }
        json j = line("group", "relations");
        j["n"] = n;
        j["max_error"] = err;
        j["pass"] = err <= 1e-9;
        out.pass = out.pass && j["pass"].get<bool>();
        out.lines.push_back(j);
    }
    double err = 0.0;
    auto group = group_elements(4);
    for (int i = 0; i < 10000; ++i) {
        Shape z = random_quadrilateral(rng);
        double h = height(z);
        for (const auto &g : group)
            err = std::max(err, std::abs(height(apply(g, z)) - h));
    }
    json j = line("group", "height_invariance");
    j["samples"] = 10000;
    j["max_error"] = err;
    j["pass"] = err <= 1e-12;
    out.pass = out.pass && j["pass"].get<bool>();
    out.lines.push_back(j);
    return out;
}

SuiteResult suite_eigen() {
    SuiteResult out;
    for (int n = 3; n <= 8; ++n) {
        auto model = linear_model(n);
        auto ds = numeric_differential(n, DihedralElement::sigma(n));
        auto dt = numeric_differential(n, DihedralElement::tau(n));
        double ms = spectrum_mismatch(ds.spectrum, real_spectrum(model.real_sigma()));
        double mt = spectrum_mismatch(dt.spectrum, real_spectrum(model.real_tau()));
        Eigen::MatrixXd sq = dt.jacobian * dt.jacobian - Eigen::MatrixXd::Identity(dt.jacobian.rows(), dt.jacobian.cols());
        double inv = sq.cwiseAbs().maxCoeff();
        json j = line("eigen", "linearization");
        j["n"] = n;
        j["sigma_mismatch"] = ms;
        j["tau_mismatch"] = mt;
        j["tau_squared_error"] = inv;
        j["pass"] = ms <= 1e-6 && mt <= 1e-6 && inv <= 1e-6;
        out.pass = out.pass && j["pass"].get<bool>();
        out.lines.push_back(j);
    }
    return out;
}

SuiteResult suite_bigons(std::uint64_t seed, int threads) {
    SuiteResult out;
    auto graph = level_graph();
    auto iso = graph_isomorphic(graph, cuboctahedron_model().graph);
    json j = line("bigons", "cuboctahedron");
    j["isomorphic"] = iso.has_value();
    j["pass"] = iso.has_value();
    out.pass = iso.has_value();
    out.lines.push_back(j);
    for (double s : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        auto rep = verify_level_decomposition(s, 1000, {}, seed, threads);
        auto lines = rep.json_lines();
        out.lines.insert(out.lines.end(), lines.begin(), lines.end());
        out.pass = out.pass && rep.pass();
    }
    return out;
}

// Non-convex 4-segments as the union of sigma^j T, T = {[0, 1, t, x] : 0 <= t <= x <= 1}.
bool in_triangulated_square(const Shape &z, double eps) {
    for (int j = 0; j < 4; ++j) {
        LabeledPolygon p = apply_raw(DihedralElement::sigma(4, -j), z.polygon());
        if (std::abs(p[1] - p[0]) <= eps)
            continue;
        Shape w = normalize_unshifted(p);
        double t = w[2].real(), x = w[3].real();
        if (std::abs(w[2].imag()) <= eps && std::abs(w[3].imag()) <= eps && t >= -eps && t <= x + eps && x <= 1.0 + eps)
            return true;
    }
    return false;
}

SuiteResult suite_boundary(std::uint64_t seed) {
    SuiteResult out;
    std::mt19937_64 rng(seed);
    std::map<std::string, std::size_t> counts;
    std::size_t failures = 0, uncovered = 0, square_mismatch = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        auto sample = random_boundary_shape(rng);
        try {
            auto st = classify_boundary(sample.shape);
            ++counts[to_string(st.kind)];
            if (st.kind != sample.expected)
                ++failures;
            bool covered = false;
            for (const auto &l : all_labels())
                covered = covered || hat_cone_membership(sample.shape, l);
            if (!covered)
                ++uncovered;
            if (st.collinear && st.kind != BoundaryKind::Wedge && st.kind != BoundaryKind::Triangle &&
                is_zigzag(sample.shape) != in_triangulated_square(sample.shape, 1e-9))
                ++square_mismatch;
        } catch (const Error &) {
            ++failures;
        }
    }
    json j = line("boundary", "stratification");
    j["samples"] = n;
    j["counts"] = counts;
    j["misclassified"] = failures;
    j["uncovered"] = uncovered;
    j["square_mismatch"] = square_mismatch;
    j["pass"] = failures == 0 && uncovered == 0 && square_mismatch == 0;
    out.pass = j["pass"].get<bool>();
    out.lines.push_back(j);
    return out;
}

SuiteResult suite_fibers(std::uint64_t seed) {
    SuiteResult out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double s : {0.1, 0.3, 0.5, 0.7, 0.9})
        for (auto fam : {FiberFamily::U, FiberFamily::W}) {
            double herr = 0.0, rt = 0.0;
            std::size_t errors = 0;
            auto region = omega_region(fam, s);
            for (int i = 0; i < 1000; ++i) {
                FiberCoord c{s, region.sample(rng), unit(rng)};
                try {
                    Shape z = fiber_to_shape(fam, c);
                    herr = std::max(herr, std::abs(height(z) - s));
                    FiberCoord back = shape_to_fiber(fam, z);
                    double len = gamma_curve(fam, s, c.z4).length();
                    rt = std::max({rt, std::abs(back.s - c.s), std::abs(back.z4 - c.z4), len * std::abs(back.t - c.t)});
                } catch (const Error &) {
                    ++errors;
                }
            }
            json j = line("fibers", fam == FiberFamily::U ? "U1" : "W1");
            j["s"] = s;
            j["height_error"] = herr;
            j["roundtrip_error"] = rt;
            j["errors"] = errors;
            j["pass"] = errors == 0 && herr <= 1e-9 && rt <= 1e-8;
            out.pass = out.pass && j["pass"].get<bool>();
            out.lines.push_back(j);
        }
    return out;
}

SuiteResult suite_bad_set(std::uint64_t seed) {
    SuiteResult out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> label(0, 11);
    for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        std::size_t disagree = 0, ambiguous = 0, bad = 0;
        for (int i = 0; i < 10000; ++i) {
            Shape z = i % 2 ? random_bad_shape(s, rng) : sample_level_shape(s, ConeLabel::from_ordinal(label(rng)), rng);
            auto v = bad_set_scan(z);
            bool b = in_bad_set(z);
            bad += b;
            if (v == ScanVerdict::Ambiguous)
                ++ambiguous;
            else if ((v == ScanVerdict::In) != b)
                ++disagree;
        }
        json j = line("bad-set", "bisector_vs_scan");
        j["s"] = s;
        j["samples"] = 10000;
        j["in_bad_set"] = bad;
        j["ambiguous"] = ambiguous;
        j["disagreements"] = disagree;
        j["pass"] = disagree == 0;
        out.pass = out.pass && j["pass"].get<bool>();
        out.lines.push_back(j);
    }
    double worst = 0.0;
    std::size_t missed = 0;
    Shape square = regular_polygon(4);
    for (int i = 0; i < 200; ++i) {
        Shape z = random_bad_shape(1.0 - 1e-7, rng);
        if (!in_bad_set(z))
            ++missed;
        worst = std::max(worst, chart_distance(z, square));
    }
    json j = line("bad-set", "near_square");
    j["samples"] = 200;
    j["missed"] = missed;
    j["max_distance"] = worst;
    j["pass"] = missed == 0 && worst <= 1e-3;
    out.pass = out.pass && j["pass"].get<bool>();
    out.lines.push_back(j);
    return out;
}

}  // namespace

SuiteResult run_suite(const std::string &name, std::uint64_t seed, int threads) {
    if (name == "group")
        return suite_group(seed);
    if (name == "eigen")
        return suite_eigen();
    if (name == "bigons")
        return suite_bigons(seed, threads);
    if (name == "boundary")
        return suite_boundary(seed);
    if (name == "fibers")
        return suite_fibers(seed);
    if (name == "bad-set")
        return suite_bad_set(seed);
    throw Error(ErrorKind::InvalidInput, "unknown suite " + name);
}

}  // namespace quadmoduli
