#include "quadmoduli/dihedral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>

namespace quadmoduli {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

}  // namespace

DihedralElement DihedralElement::sigma(int n, int power) { return {n, mod(power, n), false}; }

DihedralElement DihedralElement::operator*(const DihedralElement &rhs) const {
    if (n != rhs.n)
        throw Error(ErrorKind::InvalidInput, "group elements of different order");
    int q = reflection ? -rhs.rotation : rhs.rotation;
    return {n, mod(rotation + q, n), reflection != rhs.reflection};
}

DihedralElement DihedralElement::inverse() const {
    if (reflection)
        return *this;
    return {n, mod(-rotation, n), false};
}

std::string DihedralElement::name() const {
    std::string s;
    if (rotation == 0 && !reflection)
        return "id";
    if (rotation == 1)
        s = "sigma";
    else if (rotation > 1)
        s = "sigma^" + std::to_string(rotation);
    if (reflection)
        s += s.empty() ? "tau" : "*tau";
    return s;
}

std::vector<DihedralElement> group_elements(int n) {
    std::vector<DihedralElement> out;
    for (int r = 0; r < 2; ++r)
        for (int k = 0; k < n; ++k)
            out.push_back({n, k, r == 1});
    return out;
}

DihedralElement parse_element(const std::string &text, int n) {
    static const std::regex re(R"(^\s*(id|sigma(\^(-?\d+))?)?\s*(\*?\s*tau)?\s*$)");
    std::smatch m;
    if (text.empty() || !std::regex_match(text, m, re))
        throw Error(ErrorKind::InvalidInput, "cannot parse group element '" + text + "'");
    DihedralElement g = DihedralElement::identity(n);
    if (m[1].matched && m[1].str() != "id")
        g = DihedralElement::sigma(n, m[3].matched ? std::stoi(m[3].str()) : 1);
    if (m[4].matched)
        g = g * DihedralElement::tau(n);
    return g;
}

LabeledPolygon apply_raw(const DihedralElement &g, const LabeledPolygon &p) {
    std::size_t n = p.n();
    if (static_cast<int>(n) != g.n)
        throw Error(ErrorKind::InvalidInput, "group element and polygon disagree on n");
    LabeledPolygon q = p;
    if (g.reflection) {
        // (z1, ..., zn) -> -(conj z2, conj z1, conj zn, ..., conj z3)
        q.vertices[0] = -std::conj(p[1]);
        q.vertices[1] = -std::conj(p[0]);
        for (std::size_t i = 2; i < n; ++i)
            q.vertices[i] = -std::conj(p[n + 1 - i]);
    }
    LabeledPolygon r;
    r.vertices.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        r.vertices[i] = q[i + static_cast<std::size_t>(g.rotation)];
    return r;
}

Shape apply(const DihedralElement &g, const Shape &z, const Tolerance &tol) {
    return normalize(apply_raw(g, z.polygon()), tol);
}

std::vector<Shape> orbit(const Shape &z, const Tolerance &tol) {
    std::vector<Shape> out;
    int n = static_cast<int>(z.n());
    for (const auto &g : group_elements(n)) {
        Shape w = apply(g, z, tol);
        double scale = 1.0;
        for (auto c : w.vertices())
            scale = std::max(scale, std::abs(c));
        bool dup = std::any_of(out.begin(), out.end(),
                               [&](const Shape &o) { return chart_distance(o, w) <= tol.eq_tol * scale; });
        if (!dup)
            out.push_back(std::move(w));
    }
    return out;
}

Shape regular_polygon(int n) {
    if (n < 3)
        throw Error(ErrorKind::InvalidInput, "n must be at least 3");
    if (n == 4)
        return Shape::from_tail({{1, 1}, {0, 1}});
    if (n == 3)
        return Shape::from_tail({{0.5, std::sqrt(3.0) / 2.0}});
    LabeledPolygon p;
    for (int k = 0; k < n; ++k)
        p.vertices.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / n));
    return normalize_unshifted(p);
}

std::vector<Complex> LinearModel::apply_sigma(const std::vector<Complex> &z) const {
    if (z.size() != sigma_eigenvalues.size())
        throw Error(ErrorKind::InvalidInput, "dimension mismatch");
    std::vector<Complex> w(z.size());
    for (std::size_t k = 0; k < z.size(); ++k)
        w[k] = sigma_eigenvalues[k] * z[k];
    return w;
}

std::vector<Complex> LinearModel::apply_tau(const std::vector<Complex> &z) const {
    if (z.size() != tau_coefficients.size())
        throw Error(ErrorKind::InvalidInput, "dimension mismatch");
    std::vector<Complex> w(z.size());
    for (std::size_t k = 0; k < z.size(); ++k)
        w[k] = tau_coefficients[k] * std::conj(z[k]);
    return w;
}

Eigen::MatrixXd LinearModel::real_sigma() const {
    auto m = static_cast<Eigen::Index>(sigma_eigenvalues.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (Eigen::Index k = 0; k < m; ++k) {
        Complex c = sigma_eigenvalues[static_cast<std::size_t>(k)];
        a(2 * k, 2 * k) = c.real();
        a(2 * k, 2 * k + 1) = -c.imag();
        a(2 * k + 1, 2 * k) = c.imag();
        a(2 * k + 1, 2 * k + 1) = c.real();
    }
    return a;
}

Eigen::MatrixXd LinearModel::real_tau() const {
    auto m = static_cast<Eigen::Index>(tau_coefficients.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (Eigen::Index k = 0; k < m; ++k) {
        Complex c = tau_coefficients[static_cast<std::size_t>(k)];
        a(2 * k, 2 * k) = c.real();
        a(2 * k, 2 * k + 1) = c.imag();
        a(2 * k + 1, 2 * k) = c.imag();
        a(2 * k + 1, 2 * k + 1) = -c.real();
    }
    return a;
}

LinearModel linear_model(int n) {
    if (n < 3)
        throw Error(ErrorKind::InvalidInput, "n must be at least 3");
    LinearModel lm;
    lm.n = n;
    for (int k = 2; k <= n - 1; ++k) {
        double a = 2.0 * std::numbers::pi * k / n;
        lm.sigma_eigenvalues.push_back(std::polar(1.0, a));
        lm.tau_coefficients.push_back(-std::polar(1.0, -a));
    }
    return lm;
}

std::vector<Complex> real_spectrum(const Eigen::MatrixXd &m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    if (es.info() != Eigen::Success)
        throw Error(ErrorKind::Numerical, "eigenvalue computation did not converge");
    std::vector<Complex> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        out.push_back(es.eigenvalues()[i]);
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.real() != b.real())
            return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

void check_conjugate_pairing(const std::vector<Complex> &spectrum, double tol) {
    std::vector<bool> used(spectrum.size(), false);
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        if (used[i] || std::abs(spectrum[i].imag()) <= tol)
            continue;
        bool found = false;
        for (std::size_t j = 0; j < spectrum.size(); ++j) {
            if (j == i || used[j])
                continue;
            if (std::abs(spectrum[j] - std::conj(spectrum[i])) <= tol) {
                used[i] = used[j] = true;
                found = true;
                break;
            }
        }
        if (!found)
            throw Error(ErrorKind::Numerical, "eigenvalue without conjugate partner");
    }
}

double spectrum_mismatch(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size())
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::vector<bool> used(b.size(), false);
    for (auto x : a) {
        std::size_t best = b.size();
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j])
                continue;
            double d = std::abs(x - b[j]);
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        used[best] = true;
        worst = std::max(worst, bd);
    }
    return worst;
}

Differential numeric_differential(int n, const DihedralElement &g, double step) {
    if (n < 3 || g.n != n)
        throw Error(ErrorKind::InvalidInput, "bad n for numeric differential");
    if (!(step > 0.0))
        throw Error(ErrorKind::InvalidInput, "step must be positive");
    Shape base = regular_polygon(n);
    auto m = static_cast<Eigen::Index>(2 * (n - 2));
    auto eval = [&](const Eigen::VectorXd &x) {
        std::vector<Complex> tail(static_cast<std::size_t>(n - 2));
        for (std::size_t k = 0; k < tail.size(); ++k)
            tail[k] = {x(static_cast<Eigen::Index>(2 * k)), x(static_cast<Eigen::Index>(2 * k + 1))};
        Shape w = apply(g, Shape::from_tail(tail));
        Eigen::VectorXd y(m);
        for (std::size_t k = 0; k < tail.size(); ++k) {
            y(static_cast<Eigen::Index>(2 * k)) = w[k + 2].real();
            y(static_cast<Eigen::Index>(2 * k + 1)) = w[k + 2].imag();
        }
        return y;
    };
    Eigen::VectorXd x0(m);
    for (std::size_t k = 0; k + 2 < base.n(); ++k) {
        x0(static_cast<Eigen::Index>(2 * k)) = base[k + 2].real();
        x0(static_cast<Eigen::Index>(2 * k + 1)) = base[k + 2].imag();
    }
    Differential d;
    d.jacobian.resize(m, m);
    for (Eigen::Index c = 0; c < m; ++c) {
        Eigen::VectorXd xp = x0, xm = x0;
        xp(c) += step;
        xm(c) -= step;
        d.jacobian.col(c) = (eval(xp) - eval(xm)) / (2.0 * step);
    }
    d.spectrum = real_spectrum(d.jacobian);
    check_conjugate_pairing(d.spectrum);
    return d;
}

}  // namespace quadmoduli
