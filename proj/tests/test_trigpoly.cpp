#include "floquet/trigpoly.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

using namespace floquet;

namespace {

Matrix random_matrix(Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) m(i, j) = Complex(nd(rng), nd(rng));
    }
    return m;
}

TrigPolyOp random_trigpoly(Index dim, int max_p, int max_n, std::mt19937_64& rng) {
    TrigPolyOp f = TrigPolyOp::zero(dim);
    for (int p = 0; p <= max_p; ++p) {
        for (int n = -max_n; n <= max_n; ++n) f.add_term(p, n, 0.3 * random_matrix(dim, rng));
    }
    return f;
}

FourierOp rabi_like(double g, double delta) {
    const Index F = 8;
    Matrix a = Matrix::Zero(F, F);
    for (Index k = 1; k < F; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const Matrix ad = a.adjoint();
    Matrix sz(2, 2), sp(2, 2), sm(2, 2);
    sz << 1, 0, 0, -1;
    sp << 0, 1, 0, 0;
    sm << 0, 0, 1, 0;
    auto kron = [](const Matrix& x, const Matrix& y) {
        Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
        for (Index i = 0; i < x.rows(); ++i) {
            for (Index j = 0; j < x.cols(); ++j) {
                out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
            }
        }
        return out;
    };
    FourierOp h;
    h.dim = 2 * F;
    h.insert_mode(0, g * (kron(sm, ad) + kron(sp, a)) + 0.5 * delta * kron(sz, Matrix::Identity(F, F)));
    h.insert_mode(1, g * kron(sp, ad));
    h.insert_mode(-1, g * kron(sm, a));
    return h;
}

// adaptive Simpson on matrix-valued integrands, used as the quadrature oracle
Matrix simpson(const std::function<Matrix(double)>& f, double a, double b, int depth,
               const Matrix& fa, const Matrix& fm, const Matrix& fb, double tol) {
    const double m = 0.5 * (a + b);
    const Matrix fl = f(0.5 * (a + m));
    const Matrix fr = f(0.5 * (m + b));
    const Matrix whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const Matrix left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    const Matrix right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    if (depth <= 0 || (left + right - whole).norm() < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson(f, a, m, depth - 1, fa, fl, fm, tol / 2) +
           simpson(f, m, b, depth - 1, fm, fr, fb, tol / 2);
}

Matrix integrate_oracle(const std::function<Matrix(double)>& f, double a, double b, double tol) {
    return simpson(f, a, b, 24, f(a), f(0.5 * (a + b)), f(b), tol);
}

} // namespace

TEST_CASE("from_fourier term placement", "[trigpoly]") {
    std::mt19937_64 rng(1);
    FourierOp h;
    h.dim = 3;
    h.insert_mode(0, random_matrix(3, rng));
    TrigPolyOp f = from_fourier(h);
    REQUIRE(f.terms.size() == 1);
    REQUIRE(f.terms.count({0, 0}) == 1);

    const FourierOp rabi = rabi_like(0.7, 0.0);
    const TrigPolyOp fr = from_fourier(rabi);
    REQUIRE(fr.terms.size() == 3);
    REQUIRE(fr.terms.count({0, -1}) == 1);
    REQUIRE(fr.terms.count({0, 0}) == 1);
    REQUIRE(fr.terms.count({0, 1}) == 1);

    FourierOp empty;
    empty.dim = 3;
    REQUIRE(from_fourier(empty).terms.empty());
}

TEST_CASE("mul matches pointwise products", "[trigpoly]") {
    std::mt19937_64 rng(2);
    const TrigPolyOp f = random_trigpoly(4, 2, 2, rng);
    const TrigPolyOp id = TrigPolyOp::constant(Matrix::Identity(4, 4));
    const TrigPolyOp fid = mul(f, id);
    for (double t : {0.0, 0.3, 0.7}) {
        REQUIRE((eval(fid, t) - eval(f, t)).norm() <= 1e-12 * eval(f, t).norm());
    }

    // mode cancellation e^{i2πt}A · e^{-i2πt}B = AB
    const Matrix a = random_matrix(4, rng), b = random_matrix(4, rng);
    TrigPolyOp pa = TrigPolyOp::zero(4), pb = TrigPolyOp::zero(4);
    pa.add_term(0, 1, a);
    pb.add_term(0, -1, b);
    const TrigPolyOp prod = mul(pa, pb);
    REQUIRE(prod.terms.size() == 1);
    REQUIRE((prod.terms.at({0, 0}) - a * b).norm() <= 1e-14 * (a * b).norm());

    const TrigPolyOp g = random_trigpoly(4, 2, 2, rng);
    const TrigPolyOp fg = mul(f, g);
    for (double t : {0.0, 0.3, 0.7}) {
        const Matrix want = eval(f, t) * eval(g, t);
        REQUIRE((eval(fg, t) - want).norm() <= 1e-12 * (1.0 + want.norm()));
    }

    REQUIRE_THROWS_AS(mul(f, TrigPolyOp::constant(Matrix::Identity(3, 3))), std::invalid_argument);
}

TEST_CASE("integrate_from_zero closed forms", "[trigpoly]") {
    std::mt19937_64 rng(3);
    const Matrix a = random_matrix(3, rng);

    TrigPolyOp c = TrigPolyOp::constant(a);
    const TrigPolyOp ic = integrate_from_zero(c);
    REQUIRE(ic.terms.size() == 1);
    REQUIRE((ic.terms.at({1, 0}) - a).norm() == 0.0);

    TrigPolyOp e1 = TrigPolyOp::zero(3);
    e1.add_term(0, 1, a);
    const TrigPolyOp ie1 = integrate_from_zero(e1);
    const Complex w(0.0, two_pi);
    REQUIRE((ie1.terms.at({0, 1}) - Matrix(a / w)).norm() <= 1e-15 * a.norm());
    REQUIRE((ie1.terms.at({0, 0}) + Matrix(a / w)).norm() <= 1e-15 * a.norm());

    // t e^{i2πt} A integrated to t = 1 equals A/(i2π); cross-checked against
    // the adaptive quadrature oracle
    TrigPolyOp te = TrigPolyOp::zero(3);
    te.add_term(1, 1, a);
    const TrigPolyOp ite = integrate_from_zero(te);
    REQUIRE((eval(ite, 1.0) - Matrix(a / w)).norm() <= 1e-12 * a.norm());
    const Matrix oracle =
        integrate_oracle([&](double t) { return eval(te, t); }, 0.0, 1.0, 1e-12);
    REQUIRE((eval(ite, 1.0) - oracle).norm() <= 1e-10 * (1.0 + a.norm()));

    // F(0) = 0 for any input
    const TrigPolyOp f = random_trigpoly(3, 2, 2, rng);
    REQUIRE(eval(integrate_from_zero(f), 0.0).norm() <= 1e-14 * f.largest_term_norm());
}

TEST_CASE("average closed forms", "[trigpoly]") {
    std::mt19937_64 rng(4);
    const Matrix a = random_matrix(3, rng);
    TrigPolyOp e1 = TrigPolyOp::zero(3);
    e1.add_term(0, 1, a);
    REQUIRE(average(e1).mat.norm() == 0.0);

    const double g = 0.7, delta = 0.4;
    const FourierOp rabi = rabi_like(g, delta);
    REQUIRE((average(from_fourier(rabi)).mat - rabi.modes.at(0)).norm() == 0.0);

    TrigPolyOp lin = TrigPolyOp::zero(3);
    lin.add_term(1, 0, a);
    REQUIRE((average(lin).mat - Matrix(0.5 * a)).norm() <= 1e-15 * a.norm());

    // mixed terms against the quadrature oracle
    const TrigPolyOp f = random_trigpoly(3, 3, 2, rng);
    const Matrix oracle = integrate_oracle([&](double t) { return eval(f, t); }, 0.0, 1.0, 1e-12);
    REQUIRE((average(f).mat - oracle).norm() <= 1e-10 * (1.0 + oracle.norm()));
}

TEST_CASE("osc removes the average exactly", "[trigpoly]") {
    std::mt19937_64 rng(5);
    const Matrix a = random_matrix(3, rng);
    REQUIRE(osc(TrigPolyOp::constant(a)).terms.empty());

    const FourierOp rabi = rabi_like(0.7, 0.0);
    const TrigPolyOp o = osc(from_fourier(rabi));
    REQUIRE(o.terms.size() == 2);
    REQUIRE(o.terms.count({0, 0}) == 0);

    for (int rep = 0; rep < 5; ++rep) {
        const TrigPolyOp f = random_trigpoly(3, 2, 2, rng);
        REQUIRE(average(osc(f)).mat.norm() <= 1e-14 * f.largest_term_norm());
    }
}

TEST_CASE("eval definitions", "[trigpoly]") {
    const FourierOp rabi = rabi_like(0.7, 0.2);
    const TrigPolyOp f = from_fourier(rabi);
    REQUIRE((eval(f, 0.0) - rabi.eval(0.0)).norm() == 0.0);
    for (double t : {0.13, 0.77}) {
        REQUIRE((eval(f, t) - rabi.eval(t)).norm() <= 1e-13 * rabi.eval(t).norm());
    }
}

TEST_CASE("fundamental theorem on the unit interval", "[trigpoly][property]") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 8; ++rep) {
        const TrigPolyOp f = random_trigpoly(3, 2, 3, rng);
        const Matrix lhs = eval(integrate_from_zero(f), 1.0);
        const Matrix rhs = average(f).mat;
        REQUIRE((lhs - rhs).norm() <= 1e-13 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("integrated zero-mean periodic functions stay periodic", "[trigpoly][property]") {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 5; ++rep) {
        const TrigPolyOp f = random_trigpoly(3, 0, 3, rng);
        const TrigPolyOp g = integrate_from_zero(osc(f));
        REQUIRE(g.max_poly_degree() == 0);
        REQUIRE(eval(g, 0.0).norm() <= 1e-14 * (1.0 + g.largest_term_norm()));
        REQUIRE(eval(g, 1.0).norm() <= 1e-13 * (1.0 + g.largest_term_norm()));
    }
}

TEST_CASE("mul is associative and bilinear", "[trigpoly][property]") {
    std::mt19937_64 rng(9);
    const TrigPolyOp f = random_trigpoly(3, 1, 1, rng);
    const TrigPolyOp g = random_trigpoly(3, 1, 1, rng);
    const TrigPolyOp h = random_trigpoly(3, 1, 1, rng);
    for (double t : {0.2, 0.9}) {
        const Matrix assoc = eval(mul(mul(f, g), h), t) - eval(mul(f, mul(g, h)), t);
        REQUIRE(assoc.norm() <= 1e-12 * (1.0 + eval(mul(mul(f, g), h), t).norm()));
        const Matrix bilin =
            eval(mul(add(f, g), h), t) - (eval(mul(f, h), t) + eval(mul(g, h), t));
        REQUIRE(bilin.norm() <= 1e-12 * (1.0 + eval(mul(f, h), t).norm()));
    }
}

TEST_CASE("hermitian fourier series evaluate hermitian", "[trigpoly][property]") {
    const FourierOp rabi = rabi_like(0.7, 0.3);
    REQUIRE(rabi.hermitian_flag());
    const TrigPolyOp f = from_fourier(rabi);
    for (double t : {0.0, 0.21, 0.5, 0.86}) {
        REQUIRE(hermiticity_defect(eval(f, t)) <= 1e-13 * eval(f, t).norm());
    }
    FourierOp broken = rabi;
    broken.modes.at(1) *= 2.0;
    REQUIRE_FALSE(broken.hermitian_flag());
}

TEST_CASE("term growth caps abort loudly", "[trigpoly]") {
    TrigPolyLimits tight;
    tight.max_mode = 2;
    TrigPolyOp f = TrigPolyOp::zero(2, "", tight);
    f.add_term(0, 2, Matrix::Identity(2, 2));
    REQUIRE_THROWS_AS(mul(f, f), TermGrowthError);

    TrigPolyLimits flat;
    flat.max_poly_degree = 1;
    TrigPolyOp g = TrigPolyOp::zero(2, "", flat);
    g.add_term(1, 0, Matrix::Identity(2, 2));
    REQUIRE_THROWS_AS(mul(g, g), TermGrowthError);
}
