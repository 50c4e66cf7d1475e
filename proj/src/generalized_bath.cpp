#include "genbath/generalized_bath.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "genbath/error.hpp"
#include "genbath/states.hpp"

namespace genbath {

namespace {

constexpr double kUnitarityTol = 1e-12;

void require_unitary(const Operator& u, const char* where) {
    const double err = u.unitarity_error();
    if (err > kUnitarityTol) {
        throw InvalidArgument(fmt::format("{}: transform is not unitary (error {:.3e})", where, err));
    }
}

void require_hermitian(const Operator& h, const char* where) {
    const double err = h.hermiticity_error();
    if (err > 1e-12 * std::max(1.0, max_abs(h.matrix()))) {
        throw InvalidArgument(fmt::format("{}: operator is not Hermitian (error {:.3e})", where, err));
    }
}

// a ⊗ I on the joint space whose leading factor has a's dimension.
Matrix lift(const Matrix& a, std::size_t rest) {
    if (rest == 1) {
        return a;
    }
    const auto r = static_cast<Eigen::Index>(rest);
    Matrix out = Matrix::Zero(a.rows() * r, a.cols() * r);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (a(i, j) != cplx(0.0, 0.0)) {
                out.block(i * r, j * r, r, r).diagonal().setConstant(a(i, j));
            }
        }
    }
    return out;
}

struct EnergyCluster {
    double energy;
    Matrix projector;
};

std::vector<EnergyCluster> energy_clusters(const Operator& h) {
    const Matrix hm = 0.5 * (h.matrix() + h.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(hm);
    const Eigen::VectorXd& e = es.eigenvalues();
    const Matrix& v = es.eigenvectors();
    const double tol = 1e-9 * std::max(1.0, e.cwiseAbs().maxCoeff());

    std::vector<EnergyCluster> out;
    Eigen::Index start = 0;
    while (start < e.size()) {
        Eigen::Index end = start + 1;
        while (end < e.size() && e(end) - e(end - 1) <= tol) {
            ++end;
        }
        const Matrix block = v.middleCols(start, end - start);
        out.push_back({e.segment(start, end - start).mean(), block * block.adjoint()});
        start = end;
    }
    return out;
}

double snap_frequency(double f, double reference) {
    return std::abs(f) <= frequency_tolerance(reference) ? 0.0 : f;
}

} // namespace

void GeneralizedBathSpec::validate() const {
    require_same_space(h_sys.space(), u.space(), "GeneralizedBathSpec");
    require_hermitian(h_sys, "GeneralizedBathSpec h_sys");
    require_unitary(u, "GeneralizedBathSpec");
    for (const auto& c : thermal_channels) {
        require_same_space(h_sys.space(), c.jump.space(), "GeneralizedBathSpec channel");
    }
    if (!(temperature >= 0.0)) {
        throw InvalidArgument("bath temperature must be nonnegative");
    }
}

DensityMatrix GeneralizedBathSpec::fixed_point() const {
    validate();
    const DensityMatrix rho_t = thermal_state(h_sys, temperature);
    const Operator out = u * rho_t.op() * u.adjoint();
    return DensityMatrix(Operator(out.space(), 0.5 * (out.matrix() + out.matrix().adjoint())));
}

Operator interaction_frame_unitary(const Operator& h_sys, const Operator& u, double t) {
    require_same_space(h_sys.space(), u.space(), "interaction_frame_unitary");
    require_unitary(u, "interaction_frame_unitary");
    require_hermitian(h_sys, "interaction_frame_unitary");
    return matrix_exp(h_sys, cplx(0.0, -t)) * u * matrix_exp(h_sys, cplx(0.0, t));
}

ScheduledOperator conjugate_schedule(const Operator& h_sys, const Operator& u, const Operator& x) {
    require_same_space(h_sys.space(), u.space(), "conjugate_schedule");
    const std::size_t ds = h_sys.dim();
    if (x.dim() % ds != 0 || x.space().dim(0) != h_sys.space().dim(0)) {
        throw SpaceMismatch(fmt::format("conjugate_schedule: {} does not lead with {}",
                                        x.space().to_string(), h_sys.space().to_string()));
    }
    const std::size_t rest = x.dim() / ds;
    const auto clusters = energy_clusters(h_sys);
    const Matrix& um = u.matrix();
    const Matrix ud = um.adjoint();
    const double drop = 1e-14 * std::max(1.0, max_abs(um));

    // U(t) = sum_ab exp(-i (E_a - E_b) t) P_a U P_b
    struct Piece {
        Matrix m;
        double freq;
    };
    std::vector<Piece> left, right;
    for (const auto& a : clusters) {
        for (const auto& b : clusters) {
            const Matrix l = a.projector * um * b.projector;
            if (max_abs(l) > drop) {
                left.push_back({lift(l, rest), -(a.energy - b.energy)});
            }
            // adjoint piece of U(t)^dagger: P_b U^dagger P_a with the opposite phase
            const Matrix r = b.projector * ud * a.projector;
            if (max_abs(r) > drop) {
                right.push_back({lift(r, rest), a.energy - b.energy});
            }
        }
    }

    const double scale = std::max(1.0, max_abs(h_sys.matrix()));
    std::vector<PhaseTerm> terms;
    for (const auto& l : left) {
        const Matrix lx = l.m * x.matrix();
        for (const auto& r : right) {
            terms.push_back(
                {Operator(x.space(), lx * r.m), {1.0, 0.0}, snap_frequency(l.freq + r.freq, scale)});
        }
    }
    return ScheduledOperator(x.space(), std::move(terms))
        .simplified(1e-13 * std::max(1.0, max_abs(x.matrix())));
}

std::vector<Channel> transform_channels(const GeneralizedBathSpec& spec, double t) {
    spec.validate();
    std::vector<Channel> out;
    out.reserve(spec.thermal_channels.size());
    for (const auto& c : spec.thermal_channels) {
        const ScheduledOperator s = conjugate_schedule(spec.h_sys, spec.u, c.jump);
        if (s.is_single_phase()) {
            out.emplace_back(s.phase_stripped(), c.rate, c.label);
        } else {
            out.emplace_back(s.evaluate(t), c.rate, c.label);
        }
    }
    return out;
}

std::vector<ScheduledChannel> transformed_channel_schedule(const GeneralizedBathSpec& spec,
                                                           const HilbertSpace& space) {
    spec.validate();
    std::vector<ScheduledChannel> out;
    for (const auto& c : spec.thermal_channels) {
        const std::size_t rest = space.total() / c.jump.dim();
        const Operator lifted(space, lift(c.jump.matrix(), rest));
        ScheduledOperator s = conjugate_schedule(spec.h_sys, spec.u, lifted);
        if (s.is_single_phase()) {
            s = ScheduledOperator(s.phase_stripped());
        }
        out.emplace_back(std::move(s), c.rate, c.label);
    }
    return out;
}

Operator system_factor(const Operator& embedded, double tol) {
    const HilbertSpace& space = embedded.space();
    const std::size_t ds = space.dim(0);
    const std::size_t rest = space.total() / ds;
    const auto r = static_cast<Eigen::Index>(rest);
    Matrix a(static_cast<Eigen::Index>(ds), static_cast<Eigen::Index>(ds));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            a(i, j) = embedded.matrix()(i * r, j * r);
        }
    }
    const double err = max_abs(embedded.matrix() - lift(a, rest));
    if (err > tol * std::max(1.0, max_abs(embedded.matrix()))) {
        throw InvalidArgument(fmt::format(
            "operator is not the identity on the external slots (deviation {:.3e})", err));
    }
    return {HilbertSpace({ds}), a};
}

TransformedCoupling transform_coupling(const Operator& h_sys_embedded, const Operator& u_embedded,
                                       const Operator& v) {
    require_same_space(h_sys_embedded.space(), v.space(), "transform_coupling");
    require_same_space(u_embedded.space(), v.space(), "transform_coupling");
    require_hermitian(v, "transform_coupling coupling");
    const Operator h = system_factor(h_sys_embedded);
    const Operator u = system_factor(u_embedded);
    require_unitary(u, "transform_coupling");
    require_hermitian(h, "transform_coupling h_sys");

    // U(t)^dagger is the interaction-frame unitary of u^dagger.
    const ScheduledOperator s = conjugate_schedule(h, u.adjoint(), v);
    TransformedCoupling out{ScheduledOperator(v.space(), s.terms(), true),
                            ScheduledOperator(v.space(), s.derivative().terms(), true)};
    return out;
}

ScheduledOperator rotate_into_frame(const ScheduledOperator& x, const Operator& h0) {
    require_same_space(x.space(), h0.space(), "rotate_into_frame");
    require_hermitian(h0, "rotate_into_frame");
    const Matrix hm = 0.5 * (h0.matrix() + h0.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(hm);
    const Eigen::VectorXd& e = es.eigenvalues();
    const Matrix& w = es.eigenvectors();
    const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());

    std::vector<PhaseTerm> terms;
    for (const auto& term : x.terms()) {
        const Matrix b = w.adjoint() * term.base.matrix() * w;
        const double drop = 1e-14 * std::max(1.0, max_abs(b));
        std::vector<std::pair<double, Matrix>> groups;
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
            for (Eigen::Index r = 0; r < b.rows(); ++r) {
                if (std::abs(b(r, c)) <= drop) {
                    continue;
                }
                const double f = snap_frequency(e(r) - e(c) + term.frequency, scale);
                auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
                    return std::abs(g.first - f) <= frequency_tolerance(scale);
                });
                if (it == groups.end()) {
                    groups.emplace_back(f, Matrix::Zero(b.rows(), b.cols()));
                    it = std::prev(groups.end());
                }
                it->second(r, c) = b(r, c);
            }
        }
        for (auto& [f, m] : groups) {
            terms.push_back({Operator(x.space(), w * m * w.adjoint()), term.amplitude, f});
        }
    }
    ScheduledOperator out(x.space(), std::move(terms));
    out = out.simplified(1e-13 * scale);
    if (x.hermitian_required()) {
        return ScheduledOperator(out.space(), out.terms(), true);
    }
    return out;
}

DensityMatrix map_state_between_representations(const DensityMatrix& rho,
                                                const Operator& h_sys_embedded,
                                                const Operator& u_embedded, double t,
                                                MapDirection direction) {
    require_same_space(rho.space(), u_embedded.space(), "map_state_between_representations");
    const Operator h = system_factor(h_sys_embedded);
    const Operator u = system_factor(u_embedded);
    const std::size_t rest = rho.space().total() / h.dim();
    const Matrix ut = lift(interaction_frame_unitary(h, u, t).matrix(), rest);
    Matrix out = direction == MapDirection::ThermalToGeneralized
                     ? Matrix(ut * rho.matrix() * ut.adjoint())
                     : Matrix(ut.adjoint() * rho.matrix() * ut);
    return DensityMatrix::trusted(Operator(rho.space(), std::move(out)));
}

DensityMatrix RepresentationPair::to_generalized(const DensityMatrix& rho_thermal, double t) const {
    if (frame == Frame::Rotating) {
        const Matrix& u = u_embedded.matrix();
        return DensityMatrix::trusted(
            Operator(rho_thermal.space(), u * rho_thermal.matrix() * u.adjoint()));
    }
    return map_state_between_representations(rho_thermal, h_sys, u_embedded, t,
                                             MapDirection::ThermalToGeneralized);
}

DensityMatrix RepresentationPair::to_thermal(const DensityMatrix& rho_generalized, double t) const {
    if (frame == Frame::Rotating) {
        const Matrix& u = u_embedded.matrix();
        return DensityMatrix::trusted(
            Operator(rho_generalized.space(), u.adjoint() * rho_generalized.matrix() * u));
    }
    return map_state_between_representations(rho_generalized, h_sys, u_embedded, t,
                                             MapDirection::GeneralizedToThermal);
}

namespace {

ScheduledOperator require_static(const ScheduledOperator& x, const char* what) {
    if (!x.is_static()) {
        throw Unsupported(fmt::format(
            "rotating frame needs a resonant configuration: {} keeps explicit time dependence",
            what));
    }
    return x;
}

ScheduledChannel rotate_channel(const ScheduledChannel& c, const Operator& h0) {
    const ScheduledOperator r = rotate_into_frame(c.jump, h0);
    if (!r.is_single_phase()) {
        throw Unsupported(fmt::format(
            "rotating frame needs a resonant configuration: channel '{}' is not a global phase",
            c.label));
    }
    return {ScheduledOperator(r.phase_stripped()), c.rate, c.label};
}

} // namespace

RepresentationPair build_representations(const GeneralizedBathSpec& spec, const Operator& h_ext,
                                         const Operator& v, Frame frame) {
    spec.validate();
    require_hermitian(h_ext, "build_representations h_ext");
    const HilbertSpace joint = spec.h_sys.space().tensor(h_ext.space());
    require_same_space(joint, v.space(), "build_representations coupling");

    const Operator h_sys_e = kron(spec.h_sys, Operator::identity(h_ext.space()));
    const Operator h_ext_e = kron(Operator::identity(spec.h_sys.space()), h_ext);
    const Operator u_e = kron(spec.u, Operator::identity(h_ext.space()));
    const Operator h0 = h_sys_e + h_ext_e;

    TransformedCoupling coupling = transform_coupling(h_sys_e, u_e, v);

    std::vector<ScheduledChannel> gen_channels = transformed_channel_schedule(spec, joint);
    std::vector<ScheduledChannel> th_channels;
    for (const auto& c : spec.thermal_channels) {
        th_channels.emplace_back(kron(c.jump, Operator::identity(h_ext.space())), c.rate, c.label);
    }

    if (frame == Frame::Lab) {
        ScheduledOperator h_gen(joint, {{h0 + v, {1.0, 0.0}, 0.0}}, true);
        std::vector<PhaseTerm> th_terms{{h0, {1.0, 0.0}, 0.0}};
        th_terms.insert(th_terms.end(), coupling.v_tilde.terms().begin(),
                        coupling.v_tilde.terms().end());
        ScheduledOperator h_th(joint, std::move(th_terms), true);
        return RepresentationPair{MasterEquation(std::move(h_gen), std::move(gen_channels)),
                                  MasterEquation(std::move(h_th), std::move(th_channels)),
                                  frame,
                                  h_sys_e,
                                  h_ext_e,
                                  u_e,
                                  std::move(coupling.v_tilde),
                                  std::move(coupling.dv_tilde_dt)};
    }

    ScheduledOperator h_gen =
        require_static(rotate_into_frame(ScheduledOperator(joint, {{v, {1.0, 0.0}, 0.0}}, true), h0),
                       "the coupling V");
    ScheduledOperator v_rot =
        require_static(rotate_into_frame(coupling.v_tilde, h0), "the transformed coupling");
    ScheduledOperator dv_rot = rotate_into_frame(coupling.dv_tilde_dt, h0);
    for (auto& c : gen_channels) {
        c = rotate_channel(c, h0);
    }
    for (auto& c : th_channels) {
        c = rotate_channel(c, h0);
    }
    return RepresentationPair{MasterEquation(std::move(h_gen), std::move(gen_channels)),
                              MasterEquation(v_rot, std::move(th_channels)),
                              frame,
                              h_sys_e,
                              h_ext_e,
                              u_e,
                              std::move(v_rot),
                              std::move(dv_rot)};
}

} // namespace genbath
