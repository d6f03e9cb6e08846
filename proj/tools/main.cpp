#include "quadmoduli/boundary.hpp"
#include "quadmoduli/combinatorics.hpp"
#include "quadmoduli/cones.hpp"
#include "quadmoduli/dihedral.hpp"
#include "quadmoduli/fibers.hpp"
#include "quadmoduli/height.hpp"
#include "quadmoduli/plot.hpp"
#include "quadmoduli/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace quadmoduli;
using json = nlohmann::json;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Complex parse_point(const std::string &tok) {
    auto comma = tok.find(',');
    if (comma == std::string::npos || tok.find(',', comma + 1) != std::string::npos)
        throw Usage("malformed vertex '" + tok + "', expected re,im");
    try {
        std::size_t a = 0, b = 0;
        std::string re = tok.substr(0, comma), im = tok.substr(comma + 1);
        double x = std::stod(re, &a), y = std::stod(im, &b);
        if (a != re.size() || b != im.size() || !std::isfinite(x) || !std::isfinite(y))
            throw Usage("malformed vertex '" + tok + "'");
        return {x, y};
    } catch (const std::logic_error &) {
        throw Usage("malformed vertex '" + tok + "'");
    }
}

LabeledPolygon parse_polygon(const std::string &text) {
    LabeledPolygon p;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok)
        p.vertices.push_back(parse_point(tok));
    if (p.n() < 3)
        throw Usage("a shape needs at least three vertices");
    return p;
}

Shape parse_shape(const std::string &text) {
    try {
        return normalize(parse_polygon(text));
    } catch (const Error &e) {
        throw Usage(e.what());
    }
}

json point_json(Complex z) { return json::array({z.real(), z.imag()}); }

json shape_json(const Shape &z) {
    json a = json::array();
    for (auto v : z.vertices())
        a.push_back(point_json(v));
    return a;
}

json labels_json(const std::vector<ConeLabel> &v) {
    json a = json::array();
    for (const auto &l : v)
        a.push_back(l.name());
    return a;
}

json header(const std::string &command) {
    json j;
    j["schema"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

std::string orientation_name(Orientation o) {
    switch (o) {
    case Orientation::Positive: return "positive";
    case Orientation::Negative: return "negative";
    case Orientation::Degenerate: return "degenerate";
    }
    return "?";
}

int thread_count() {
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char *env = std::getenv("QUADMODULI_THREADS")) {
        int e = std::atoi(env);
        if (e > 0)
            n = std::min(n, e);
    }
    return n;
}

json classify(const Shape &z) {
    json j = header("classify");
    j["shape"] = shape_json(z);
    j["n"] = z.n();
    j["simple"] = is_simple(z);
    j["orientation"] = orientation_name(orientation(z));
    if (z.n() == 3) {
        j["height"] = triangle_height(z);
        if (j["simple"].get<bool>())
            j["longest_sides"] = classify_triangle_region(z);
        return j;
    }
    if (z.n() != 4)
        return j;
    auto rep = height_report(z);
    json h;
    h["h"] = rep.h;
    h["ell"] = rep.ell;
    h["ell_sides"] = rep.ell_sides;
    h["ell_unique"] = rep.ell_unique;
    h["r"] = rep.r;
    h["r_unique"] = rep.r_unique;
    json pairs = json::array();
    for (const auto &p : rep.r_pairs)
        pairs.push_back({{"vertex", p.vertex}, {"side", p.side}, {"foot", point_json(p.foot)}});
    h["r_pairs"] = pairs;
    j["height_report"] = h;
    Tolerance tol;
    if (rep.h > tol.class_tol) {
        auto m = classify_cone(z);
        j["cones"] = {{"open", labels_json(m.open_labels)}, {"closure", labels_json(m.closure_labels)}};
    } else {
        auto st = classify_boundary(z);
        json b;
        b["stratum"] = to_string(st.kind);
        b["vertex"] = st.vertex;
        b["collinear"] = st.collinear;
        b["zigzag"] = is_zigzag(z);
        std::vector<ConeLabel> hats;
        for (const auto &l : all_labels())
            if (hat_cone_membership(z, l))
                hats.push_back(l);
        b["hat_cones"] = labels_json(hats);
        j["boundary"] = b;
    }
    j["bad_set"] = in_bad_set(z);
    return j;
}

FiberFamily parse_family(const std::string &f) {
    if (f == "U" || f == "U1")
        return FiberFamily::U;
    if (f == "W" || f == "W1")
        return FiberFamily::W;
    throw Usage("family must be U or W");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Shapes of quadrilaterals: height, cone decomposition and verification"};
    app.require_subcommand(1);

    std::string shape_text;
    auto *c_classify = app.add_subcommand("classify", "Simplicity, orientation, height, cones and boundary stratum");
    c_classify->add_option("--shape", shape_text, "vertices as \"re,im re,im ...\"")->required();

    auto *c_height = app.add_subcommand("height", "Height of a quadrilateral or triangle");
    c_height->add_option("--shape", shape_text)->required();

    auto *c_orbit = app.add_subcommand("orbit", "Dihedral orbit of a shape");
    c_orbit->add_option("--shape", shape_text)->required();

    auto *c_canon = app.add_subcommand("canon", "Canonical representative of the orbit");
    c_canon->add_option("--shape", shape_text)->required();

    double level = 0.5;
    int count = 1000;
    std::uint64_t seed = 7;
    auto *c_sample = app.add_subcommand("sample-level", "Shapes of a given height through fiber coordinates");
    c_sample->add_option("--s", level)->required()->check(CLI::Range(0.0, 1.0));
    c_sample->add_option("--n", count)->check(CLI::NonNegativeNumber);
    c_sample->add_option("--seed", seed);

    std::string family = "U", z4_text;
    double t_param = 0.0;
    auto *c_fiber = app.add_subcommand("fiber", "Fiber coordinates to shape, or shape to fiber coordinates");
    c_fiber->add_option("--family", family, "U or W");
    c_fiber->add_option("--s", level);
    c_fiber->add_option("--z4", z4_text, "base point \"re,im\"");
    c_fiber->add_option("--t", t_param)->check(CLI::Range(0.0, 1.0));
    c_fiber->add_option("--shape", shape_text);

    double target = 0.5;
    auto *c_flow = app.add_subcommand("flow", "Move a shape to another level inside its cone");
    c_flow->add_option("--shape", shape_text)->required();
    c_flow->add_option("--target-s", target)->required();

    std::string suite;
    int threads = 0;
    auto *c_verify = app.add_subcommand("verify", "Run a verification suite");
    c_verify->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
    c_verify->add_option("--seed", seed);
    c_verify->add_option("--threads", threads);

    std::vector<double> levels;
    std::string out_path;
    int samples = 720;
    auto *c_plot = app.add_subcommand("plot", "SVG of triangle height level curves");
    c_plot->add_option("--triangle-levels", levels)->required()->delimiter(',');
    c_plot->add_option("--out", out_path)->required();
    c_plot->add_option("--samples", samples)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (c_classify->parsed()) {
            std::cout << classify(parse_shape(shape_text)).dump() << "\n";
        } else if (c_height->parsed()) {
            Shape z = parse_shape(shape_text);
            json j = header("height");
            j["shape"] = shape_json(z);
            j["h"] = z.n() == 3 ? triangle_height(z) : height(z);
            std::cout << j.dump() << "\n";
        } else if (c_orbit->parsed()) {
            Shape z = parse_shape(shape_text);
            for (const auto &g : group_elements(static_cast<int>(z.n()))) {
                json j = header("orbit");
                j["element"] = g.name();
                j["shape"] = shape_json(apply(g, z));
                std::cout << j.dump() << "\n";
            }
        } else if (c_canon->parsed()) {
            Shape z = parse_shape(shape_text);
            json j = header("canon");
            j["shape"] = shape_json(canonical_rep(z));
            std::cout << j.dump() << "\n";
        } else if (c_sample->parsed()) {
            if (!(level > 0.0 && level < 1.0))
                throw Usage("--s must lie in (0, 1)");
            std::mt19937_64 rng(seed);
            for (int i = 0; i < count; ++i) {
                auto label = ConeLabel::from_ordinal(i % 12);
                Shape z = sample_level_shape(level, label, rng);
                json j = header("sample-level");
                j["index"] = i;
                j["cone"] = label.name();
                j["shape"] = shape_json(z);
                j["h"] = height(z);
                std::cout << j.dump() << "\n";
            }
        } else if (c_fiber->parsed()) {
            FiberFamily fam = parse_family(family);
            json j = header("fiber");
            j["family"] = fam == FiberFamily::U ? "U1" : "W1";
            if (!shape_text.empty()) {
                Shape z = parse_shape(shape_text);
                auto c = shape_to_fiber(fam, z);
                j["s"] = c.s;
                j["z4"] = point_json(c.z4);
                j["t"] = c.t;
            } else {
                if (z4_text.empty())
                    throw Usage("fiber needs --shape or --z4");
                Complex z4 = parse_point(z4_text);
                auto curve = gamma_curve(fam, level, z4);
                j["s"] = level;
                j["z4"] = point_json(z4);
                j["t"] = t_param;
                j["fiber_length"] = curve.length();
                j["collapsed"] = curve.collapsed();
                j["shape"] = shape_json(fiber_to_shape(fam, {level, z4, t_param}));
            }
            std::cout << j.dump() << "\n";
        } else if (c_flow->parsed()) {
            Shape z = parse_shape(shape_text);
            Shape w = cone_flow(z, target);
            json j = header("flow");
            j["shape"] = shape_json(w);
            j["h"] = height(w);
            std::cout << j.dump() << "\n";
        } else if (c_verify->parsed()) {
            auto res = run_suite(suite, seed, threads > 0 ? std::min(threads, thread_count()) : thread_count());
            for (const auto &l : res.lines)
                std::cout << l.dump() << "\n";
            return res.pass ? 0 : 1;
        } else if (c_plot->parsed()) {
            std::ofstream f(out_path);
            if (!f)
                throw Usage("cannot write " + out_path);
            f << triangle_levels_svg(levels, samples);
        }
    } catch (const Usage &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::InvalidInput ? 2 : 1;
    }
    return 0;
}
