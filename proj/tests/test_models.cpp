#include "floquet/effective.hpp"
#include "floquet/models.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace floquet;

namespace {

// per-mode J-compatibility residual; zero iff J H(t) J = H(-t)
double conjugation_mode_defect(const FourierOp& h, const Conjugation& j) {
    double worst = 0.0;
    for (const auto& [n, m] : h.modes) {
        worst = std::max(worst, (j.similarity(m) - m).norm());
    }
    return worst;
}

} // namespace

TEST_CASE("rabi builder structure", "[models]") {
    ModelSpec spec;
    spec.variant = ModelVariant::Rabi;
    spec.g = 0.5;
    spec.delta = 0.3;
    spec.fock_dim = 12;
    const Model m = build_rabi(spec);

    REQUIRE(m.h.dim == 24);
    REQUIRE(m.h.modes.size() == 3);
    REQUIRE(m.h.hermitian_flag());
    REQUIRE(m.partition.total() == 24);
    REQUIRE(m.partition.count() == 13);
    REQUIRE(m.coupling_bandwidth == 2);

    // the original static interaction V is H(0); the paper's partition keeps
    // its coupling within two blocks
    REQUIRE(bandwidth(Operator(m.h.eval(0.0)), m.partition) <= 2);
    for (const auto& [n, mode] : m.h.modes) {
        REQUIRE(bandwidth(Operator(mode), m.partition) <= 2);
    }

    // lowest-energy basis state is spin-down ⊗ vacuum
    REQUIRE(m.fock_level.front() == 0);
    const Vector psi = m.default_state();
    REQUIRE(std::abs(psi[0] - 1.0) == 0.0);

    REQUIRE_THROWS_AS([&] {
        ModelSpec bad = spec;
        bad.fock_dim = 4;
        return build_rabi(bad);
    }(), std::invalid_argument);
}

TEST_CASE("rabi without coupling has a trivial effective series", "[models]") {
    ModelSpec spec;
    spec.variant = ModelVariant::Rabi;
    spec.g = 0.0;
    spec.delta = 0.4;
    spec.fock_dim = 8;
    const Model m = build_rabi(spec);
    REQUIRE(m.h.eval(0.3).norm() == m.h.modes.at(0).norm()); // only the detuning mode survives
    const EffectiveSeries s = heff_coefficients(m.h, 2);
    for (int l = 1; l <= 2; ++l) {
        REQUIRE(s.coeffs[static_cast<std::size_t>(l)].mat.norm() <= 1e-13 * s.coeffs[0].norm());
    }
}

TEST_CASE("rabi detuning-free average is the JC coupling", "[models][paper]") {
    ModelSpec spec;
    spec.variant = ModelVariant::Rabi;
    spec.g = 0.7;
    spec.delta = 0.0;
    spec.fock_dim = 10;
    const Model m = build_rabi(spec);
    // with Δ=0 the n=0 mode IS the JC coupling; the average returns it
    REQUIRE((average(from_fourier(m.h)).mat - m.h.modes.at(0)).norm() == 0.0);
    // JC coupling conserves the H_0 blocks exactly
    REQUIRE(bandwidth(Operator(m.h.modes.at(0)), m.partition) == 0);
}

TEST_CASE("driven oscillator builder", "[models]") {
    ModelSpec spec;
    spec.variant = ModelVariant::DrivenHO;
    spec.omega = 1.2;
    spec.fock_dim = 10;
    spec.sine_coeffs = {1.0};
    const Model m = build_driven_ho(spec);

    REQUIRE(m.h.dim == 10);
    REQUIRE(m.h.modes.size() == 3);
    REQUIRE(m.h.hermitian_flag());
    REQUIRE(m.coupling_bandwidth == 1);

    // f = sin(2πt): H_{±1} = ∓(i/2)(a + a†)
    Matrix a = Matrix::Zero(10, 10);
    for (Index k = 1; k < 10; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const Matrix x = a + Matrix(a.adjoint());
    REQUIRE((m.h.modes.at(1) - Matrix(Complex(0, -0.5) * x)).norm() == 0.0);
    REQUIRE((m.h.modes.at(-1) - Matrix(Complex(0, 0.5) * x)).norm() == 0.0);

    // average is the bare oscillator
    Matrix n0 = Matrix::Zero(10, 10);
    for (Index n = 0; n < 10; ++n) n0(n, n) = spec.omega * (n + 0.5);
    REQUIRE((average(from_fourier(m.h)).mat - n0).norm() == 0.0);

    // zero drive: autonomous oscillator, all corrections vanish
    ModelSpec flat = spec;
    flat.sine_coeffs = {0.0};
    const Model mf = build_driven_ho(flat);
    REQUIRE(mf.h.modes.size() == 1);
    const EffectiveSeries s = heff_coefficients(mf.h, 2);
    for (int l = 1; l <= 2; ++l) {
        REQUIRE(s.coeffs[static_cast<std::size_t>(l)].mat.norm() <= 1e-13 * s.coeffs[0].norm());
    }
}

TEST_CASE("random banded builder", "[models]") {
    ModelSpec spec;
    spec.variant = ModelVariant::RandomBanded;
    spec.dim = 8;
    spec.bandwidth = 0;
    spec.num_modes = 0;
    spec.seed = 42;
    const Model diag = build_random_banded(spec);
    REQUIRE(diag.h.modes.size() == 1);
    REQUIRE(hermiticity_defect(Operator(diag.h.modes.at(0))) <= 1e-15);
    REQUIRE(bandwidth(Operator(diag.h.modes.at(0)), diag.partition) == 0);

    spec.bandwidth = 2;
    spec.num_modes = 2;
    const Model m1 = build_random_banded(spec);
    const Model m2 = build_random_banded(spec);
    // deterministic given the seed: byte-identical mode matrices
    for (const auto& [n, mat] : m1.h.modes) {
        REQUIRE((mat - m2.h.modes.at(n)).norm() == 0.0);
    }
    ModelSpec other = spec;
    other.seed = 43;
    const Model m3 = build_random_banded(other);
    REQUIRE((m1.h.modes.at(0) - m3.h.modes.at(0)).norm() > 0.0);

    REQUIRE(m1.h.hermitian_flag());
    REQUIRE(hermiticity_defect(Operator(m1.h.eval(0.37))) <= 1e-13 * m1.h.eval(0.37).norm());
    for (const auto& [n, mat] : m1.h.modes) {
        REQUIRE(bandwidth(Operator(mat), m1.partition) <= spec.bandwidth);
    }

    REQUIRE_THROWS_AS([&] {
        ModelSpec bad = spec;
        bad.dim = 128;
        return build_random_banded(bad);
    }(), std::invalid_argument);
}

TEST_CASE("conjugation compatibility of the bundled models", "[models][property]") {
    ModelSpec rabi;
    rabi.variant = ModelVariant::Rabi;
    rabi.g = 0.5;
    rabi.delta = 0.0;
    rabi.fock_dim = 10;
    const Model mr = build_rabi(rabi);
    REQUIRE(mr.conjugation.has_value());
    mr.conjugation->validate();
    REQUIRE(conjugation_mode_defect(mr.h, *mr.conjugation) <= 1e-14);

    ModelSpec ho;
    ho.variant = ModelVariant::DrivenHO;
    ho.omega = 1.0;
    ho.fock_dim = 10;
    const Model mh = build_driven_ho(ho);
    REQUIRE(mh.conjugation.has_value());
    mh.conjugation->validate();
    REQUIRE(conjugation_mode_defect(mh.h, *mh.conjugation) <= 1e-14);

    // J H(t) J = H(-t) pointwise
    for (double t : {0.17, 0.42}) {
        const Matrix lhs = mh.conjugation->similarity(mh.h.eval(t));
        const Matrix rhs = mh.h.eval(-t);
        REQUIRE((lhs - rhs).norm() <= 1e-13 * rhs.norm());
    }
}

TEST_CASE("interior index sets", "[models]") {
    ModelSpec ho;
    ho.variant = ModelVariant::DrivenHO;
    ho.omega = 1.0;
    ho.fock_dim = 12;
    const Model mh = build_driven_ho(ho);
    REQUIRE(mh.interior_indices(0).size() == 10); // levels < 12 - 2
    REQUIRE(mh.interior_indices(2).size() == 6);  // levels < 12 - 6

    ModelSpec rb;
    rb.variant = ModelVariant::RandomBanded;
    rb.dim = 8;
    const Model mb = build_random_banded(rb);
    REQUIRE(mb.interior_indices(3).size() == 8); // no truncation

    ModelSpec rabi;
    rabi.variant = ModelVariant::Rabi;
    rabi.fock_dim = 8;
    const Model mr = build_rabi(rabi);
    const auto idx = mr.interior_indices(0);
    for (int i : idx) REQUIRE(mr.fock_level[static_cast<std::size_t>(i)] < 6);
}

TEST_CASE("build_model dispatch", "[models]") {
    ModelSpec spec;
    spec.variant = ModelVariant::DrivenHO;
    spec.fock_dim = 9;
    REQUIRE(build_model(spec).name() == "driven_ho");
    spec.variant = ModelVariant::Rabi;
    spec.fock_dim = 9;
    REQUIRE(build_model(spec).name() == "rabi");
    spec.variant = ModelVariant::RandomBanded;
    REQUIRE(build_model(spec).name() == "random_banded");
}
