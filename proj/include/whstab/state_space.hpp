#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "whstab/outcome.hpp"

namespace whstab {

/// Discrete-time LTI system x+ = A x + B u, y = C x + D u.
struct StateSpace {
    Eigen::MatrixXd A, B, C, D;
    double period_s = 0.0;

    int states() const { return static_cast<int>(A.rows()); }
    int inputs() const { return static_cast<int>(B.cols()); }
    int outputs() const { return static_cast<int>(C.rows()); }

    void validate() const {
        if (A.rows() != A.cols()) throw NonSquare("state matrix A must be square");
        if (B.rows() != A.rows()) throw DimensionMismatch("B must have as many rows as A");
        if (C.cols() != A.cols()) throw DimensionMismatch("C must have as many columns as A");
        if (D.rows() != C.rows() || D.cols() != B.cols())
            throw DimensionMismatch("D must be outputs x inputs");
    }
};

/// What the actuator applies when no fresh command arrives.
enum class ActuatorMode : std::uint8_t { Zero, Hold };

inline std::string to_string(ActuatorMode m) { return m == ActuatorMode::Zero ? "zero" : "hold"; }

inline ActuatorMode actuator_mode_from_string(std::string_view s) {
    if (s == "zero") return ActuatorMode::Zero;
    if (s == "hold") return ActuatorMode::Hold;
    throw ParseError("unknown actuator mode \"" + std::string(s) + "\" (expected \"zero\" or \"hold\")");
}

/// One closed-loop matrix per outcome character. Under Kill the lifted
/// state is [x; z; u] (plant, controller, applied command); under
/// Skip-Next it is [x; z; u; x_held; u_held], where the held copies carry
/// the measurements a deferred job consumes on recovery.
struct ClosedLoopSet {
    Strategy strategy = Strategy::Kill;
    ActuatorMode mode = ActuatorMode::Zero;
    std::array<Eigen::MatrixXd, kOutcomeCount> matrices; ///< indexed by Outcome; unused slot stays 0x0

    int dimension() const { return static_cast<int>(matrices[0].rows()); }

    const Eigen::MatrixXd& matrix(Outcome o) const {
        const Eigen::MatrixXd& m = matrices[static_cast<std::size_t>(o)];
        if (m.size() == 0)
            throw AlphabetMismatch(std::string("outcome '") + to_char(o) +
                                   "' has no closed-loop matrix under strategy " + to_string(strategy));
        return m;
    }

    bool has(Outcome o) const { return matrices[static_cast<std::size_t>(o)].size() != 0; }
};

/// Assembles the per-outcome closed-loop matrices for a plant/controller
/// pair. The controller acts on the tracking error e = -y, so its input
/// blocks enter with a minus sign.
///
/// The miss matrix applies Delta to the stale command; empirically the
/// hold/zero roles of Delta are exchanged between the two strategies
/// (under Skip-Next the deferred job's command overwrite makes Delta = I
/// the zeroing behaviour), and that convention is used here.
inline ClosedLoopSet closed_loop_set(const StateSpace& plant, const StateSpace& controller,
                                     Strategy strategy, ActuatorMode mode) {
    plant.validate();
    controller.validate();
    const int n = plant.states();
    const int r = plant.inputs();
    const int q = plant.outputs();
    const int s = controller.states();
    if (controller.inputs() != q)
        throw DimensionMismatch("controller inputs must match plant outputs");
    if (controller.outputs() != r)
        throw DimensionMismatch("controller outputs must match plant inputs");

    const Eigen::MatrixXd& Ap = plant.A;
    const Eigen::MatrixXd& Bp = plant.B;
    const Eigen::MatrixXd& Cp = plant.C;
    const Eigen::MatrixXd& Dp = plant.D;
    const Eigen::MatrixXd& Ac = controller.A;
    const Eigen::MatrixXd& Bc = controller.B;
    const Eigen::MatrixXd& Cc = controller.C;
    const Eigen::MatrixXd& Dc = controller.D;

    const bool zero_cmd = strategy == Strategy::Kill ? mode == ActuatorMode::Zero
                                                     : mode == ActuatorMode::Hold;
    const Eigen::MatrixXd delta =
        zero_cmd ? Eigen::MatrixXd::Zero(r, r).eval() : Eigen::MatrixXd::Identity(r, r).eval();

    ClosedLoopSet cl;
    cl.strategy = strategy;
    cl.mode = mode;

    if (strategy == Strategy::Kill) {
        const int d = n + s + r;
        Eigen::MatrixXd AH = Eigen::MatrixXd::Zero(d, d);
        AH.block(0, 0, n, n) = Ap;
        AH.block(0, n + s, n, r) = Bp;
        AH.block(n, 0, s, n) = -Bc * Cp;
        AH.block(n, n, s, s) = Ac;
        AH.block(n, n + s, s, r) = -Bc * Dp;
        AH.block(n + s, 0, r, n) = -Dc * Cp;
        AH.block(n + s, n, r, s) = Cc;
        AH.block(n + s, n + s, r, r) = -Dc * Dp;

        Eigen::MatrixXd AM = Eigen::MatrixXd::Zero(d, d);
        AM.block(0, 0, n, n) = Ap;
        AM.block(0, n + s, n, r) = Bp;
        AM.block(n, n, s, s) = Eigen::MatrixXd::Identity(s, s);
        AM.block(n + s, n + s, r, r) = delta;

        cl.matrices[static_cast<std::size_t>(Outcome::Hit)] = AH;
        cl.matrices[static_cast<std::size_t>(Outcome::Miss)] = AM;
        return cl;
    }

    const int d = n + s + r + n + r;
    const int ox = n + s + r;     // held plant state offset
    const int ou = n + s + r + n; // held command offset

    Eigen::MatrixXd AH = Eigen::MatrixXd::Zero(d, d);
    AH.block(0, 0, n, n) = Ap;
    AH.block(0, n + s, n, r) = Bp;
    AH.block(n, 0, s, n) = -Bc * Cp;
    AH.block(n, n, s, s) = Ac;
    AH.block(n, n + s, s, r) = -Bc * Dp;
    AH.block(n + s, 0, r, n) = -Dc * Cp;
    AH.block(n + s, n, r, s) = Cc;
    AH.block(n + s, n + s, r, r) = -Dc * Dp;
    AH.block(ox, 0, n, n) = Ap; // held copies track the live loop while on time
    AH.block(ox, n + s, n, r) = Bp;
    AH.block(ou, 0, r, n) = -Dc * Cp;
    AH.block(ou, n, r, s) = Cc;
    AH.block(ou, n + s, r, r) = -Dc * Dp;

    Eigen::MatrixXd AM = Eigen::MatrixXd::Zero(d, d);
    AM.block(0, 0, n, n) = Ap;
    AM.block(0, n + s, n, r) = Bp;
    AM.block(n, n, s, s) = Eigen::MatrixXd::Identity(s, s);
    AM.block(n + s, n + s, r, r) = delta;
    AM.block(ox, ox, n, n) = Eigen::MatrixXd::Identity(n, n); // freeze held copies during a miss
    AM.block(ou, ou, r, r) = Eigen::MatrixXd::Identity(r, r);

    Eigen::MatrixXd AR = Eigen::MatrixXd::Zero(d, d);
    AR.block(0, 0, n, n) = Ap;
    AR.block(0, n + s, n, r) = Bp;
    AR.block(n, n, s, s) = Ac;
    AR.block(n, ox, s, n) = -Bc * Cp; // recovery consumes the held measurement
    AR.block(n, ou, s, r) = -Bc * Dp;
    AR.block(n + s, n, r, s) = Cc;
    AR.block(n + s, ox, r, n) = -Dc * Cp;
    AR.block(n + s, ou, r, r) = -Dc * Dp;
    AR.block(ox, 0, n, n) = Ap;
    AR.block(ox, n + s, n, r) = Bp;
    AR.block(ou, n, r, s) = Cc;
    AR.block(ou, ox, r, n) = -Dc * Cp;
    AR.block(ou, ou, r, r) = -Dc * Dp;

    cl.matrices[static_cast<std::size_t>(Outcome::Hit)] = AH;
    cl.matrices[static_cast<std::size_t>(Outcome::Miss)] = AM;
    cl.matrices[static_cast<std::size_t>(Outcome::Recovery)] = AR;
    return cl;
}

/// Applies the outcome sequence to an initial lifted state; returns the
/// trajectory including the initial state (length |seq| + 1).
inline std::vector<Eigen::VectorXd> simulate(const ClosedLoopSet& cl, const OutcomeString& seq,
                                             const Eigen::VectorXd& x0) {
    if (x0.size() != cl.dimension())
        throw DimensionMismatch("initial state has length " + std::to_string(x0.size()) +
                                " but the closed loop has dimension " + std::to_string(cl.dimension()));
    validate_sequence(seq, cl.strategy, /*allow_initial_recovery=*/false);
    std::vector<Eigen::VectorXd> traj;
    traj.reserve(seq.size() + 1);
    traj.push_back(x0);
    for (Outcome o : seq) traj.push_back(cl.matrix(o) * traj.back());
    return traj;
}

/// Product A_{alpha_L} ... A_{alpha_1} of the closed-loop matrices along a
/// sequence (right-to-left application order).
inline Eigen::MatrixXd sequence_product(const ClosedLoopSet& cl, const OutcomeString& seq) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(cl.dimension(), cl.dimension());
    for (Outcome o : seq) p = cl.matrix(o) * p;
    return p;
}

} // namespace whstab
