#include "quadmoduli/cones.hpp"

#include "quadmoduli/height.hpp"

#include <algorithm>
#include <cmath>

namespace quadmoduli {

namespace {

int wrap(int k) { return ((k - 1) % 4 + 4) % 4 + 1; }

double clause_distance(const std::array<VertexSide, 8> &table, int vertex, int side) {
    for (const auto &e : table)
        if (e.vertex == vertex && e.side == side)
            return e.distance;
    throw Error(ErrorKind::Numerical, "vertex/side pair not in table");
}

}  // namespace

std::string ConeLabel::name() const {
    static const char *f = "UVW";
    return std::string(1, f[static_cast<int>(family)]) + std::to_string(index);
}

ConeLabel ConeLabel::parse(const std::string &text) {
    if (text.size() != 2 || text[1] < '1' || text[1] > '4')
        throw Error(ErrorKind::InvalidInput, "bad cone label '" + text + "'");
    ConeLabel l;
    switch (text[0]) {
    case 'U': l.family = Family::U; break;
    case 'V': l.family = Family::V; break;
    case 'W': l.family = Family::W; break;
    default: throw Error(ErrorKind::InvalidInput, "bad cone label '" + text + "'");
    }
    l.index = text[1] - '0';
    return l;
}

ConeLabel ConeLabel::from_ordinal(int k) {
    if (k < 0 || k >= 12)
        throw Error(ErrorKind::InvalidInput, "cone ordinal out of range");
    return {static_cast<Family>(k / 4), k % 4 + 1};
}

std::array<ConeLabel, 12> all_labels() {
    std::array<ConeLabel, 12> out{};
    for (int k = 0; k < 12; ++k)
        out[static_cast<std::size_t>(k)] = ConeLabel::from_ordinal(k);
    return out;
}

std::array<std::pair<int, int>, 2> cone_clauses(const ConeLabel &label) {
    int j = label.index;
    switch (label.family) {
    case Family::U: return {{{wrap(j + 1), wrap(j + 2)}, {wrap(j + 2), j}}};
    case Family::V: return {{{wrap(j + 3), j}, {j, wrap(j + 2)}}};
    case Family::W: return {{{wrap(j + 2), wrap(j + 3)}, {wrap(j + 3), wrap(j + 1)}}};
    }
    throw Error(ErrorKind::InvalidInput, "bad family");
}

ConeLabel act(const DihedralElement &g, const ConeLabel &label) {
    if (g.n != 4)
        throw Error(ErrorKind::Unsupported, "cone labels need n = 4");
    ConeLabel l = label;
    if (g.reflection) {
        l.index = wrap(2 - l.index);
        if (l.family == Family::U)
            l.family = Family::V;
        else if (l.family == Family::V)
            l.family = Family::U;
    }
    l.index = wrap(l.index - g.rotation);
    return l;
}

DihedralElement reference_element(const ConeLabel &label) {
    auto rot = DihedralElement::sigma(4, 1 - label.index);
    if (label.family == Family::V)
        return rot * DihedralElement::tau(4);
    return rot;
}

ConeLabel reference_label(const ConeLabel &label) {
    return label.family == Family::W ? ConeLabel{Family::W, 1} : ConeLabel{Family::U, 1};
}

double closure_residual(const Shape &z, const ConeLabel &label) {
    auto sides = side_lengths(z);
    auto table = vertex_side_table(z);
    double ell = *std::max_element(sides.begin(), sides.end());
    double r = table[0].distance;
    for (const auto &e : table)
        r = std::min(r, e.distance);
    double side_gap = ell - sides[static_cast<std::size_t>(label.index - 1)];
    double clause = std::numeric_limits<double>::infinity();
    for (auto [v, s] : cone_clauses(label))
        clause = std::min(clause, clause_distance(table, v, s) - r);
    return std::max(side_gap, clause) / ell;
}

bool in_closure(const Shape &z, const ConeLabel &label, const Tolerance &tol) {
    return closure_residual(z, label) <= tol.class_tol;
}

ConeMembership classify_cone(const Shape &z, const Tolerance &tol) {
    if (z.n() != 4)
        throw Error(ErrorKind::Unsupported, "cones are defined for quadrilaterals");
    ConeMembership m;
    for (const auto &l : all_labels())
        if (in_closure(z, l, tol))
            m.closure_labels.push_back(l);
    auto rep = height_report(z, tol);
    if (rep.ell_unique && rep.r_unique) {
        auto table = vertex_side_table(z);
        int j = rep.ell_sides.front();
        for (Family f : {Family::U, Family::V, Family::W}) {
            ConeLabel l{f, j};
            for (auto [v, s] : cone_clauses(l)) {
                if (clause_distance(table, v, s) <= rep.r + tol.eq_tol * rep.ell) {
                    m.open_labels.push_back(l);
                    break;
                }
            }
        }
    }
    return m;
}

ConeLabel preferred_label(const ConeMembership &m) {
    const auto &src = m.open_labels.empty() ? m.closure_labels : m.open_labels;
    if (src.empty())
        throw Error(ErrorKind::Membership, "shape lies in no cone closure");
    return *std::min_element(src.begin(), src.end());
}

SpecialPoints special_points(double s) {
    if (!(s > 0.0 && s < 1.0))
        throw Error(ErrorKind::Domain, "special points need 0 < s < 1");
    double th = std::asin(s);
    Complex q1 = std::polar(1.0, th);
    Complex q2 = -std::polar(1.0, -th);
    return {Shape::from_tail({q1 + 1.0, q1}), Shape::from_tail({q2 + 1.0, q2})};
}

std::vector<int> classify_triangle_region(const Shape &z, const Tolerance &tol) {
    if (z.n() != 3)
        throw Error(ErrorKind::Unsupported, "triangle regions need n = 3");
    std::array<double, 3> s{std::abs(z[1] - z[0]), std::abs(z[2] - z[1]), std::abs(z[0] - z[2])};
    double ell = *std::max_element(s.begin(), s.end());
    std::vector<int> out;
    for (int k = 0; k < 3; ++k)
        if (s[static_cast<std::size_t>(k)] >= ell - tol.eq_tol * ell)
            out.push_back(k + 1);
    return out;
}

}  // namespace quadmoduli
