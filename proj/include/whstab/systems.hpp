#pragma once

#include <string_view>

#include "whstab/state_space.hpp"

namespace whstab {

/// Third-order stable process plant, 0.5 s sampling.
inline StateSpace plant_p1() {
    StateSpace p;
    p.A.resize(3, 3);
    p.A << 0.606, 0.304, 0.076,
           0.0,   0.606, 0.304,
           0.0,   0.0,   0.606;
    p.B.resize(3, 1);
    p.B << 0.014, 0.091, 0.394;
    p.C = Eigen::MatrixXd::Zero(1, 3);
    p.C(0, 0) = 1.0;
    p.D = Eigen::MatrixXd::Zero(1, 1);
    p.period_s = 0.5;
    return p;
}

/// PI controller for plant_p1, acting on the tracking error e = -y:
/// z+ = z + 0.359 e, u+ = 0.454 z + 0.633 e.
inline StateSpace controller_c1() {
    StateSpace c;
    c.A = Eigen::MatrixXd::Constant(1, 1, 1.0);
    c.B = Eigen::MatrixXd::Constant(1, 1, 0.359);
    c.C = Eigen::MatrixXd::Constant(1, 1, 0.454);
    c.D = Eigen::MatrixXd::Constant(1, 1, 0.633);
    c.period_s = 0.5;
    return c;
}

/// Unstable third-order altitude model, 0.01 s sampling, full state output.
inline StateSpace plant_p2() {
    StateSpace p;
    p.A.resize(3, 3);
    p.A << 0.999,  0.012, -5.5e-4,
           0.020,  1.0,   -5.5e-6,
           5.0e-5, 0.005,  1.0;
    p.B.resize(3, 1);
    p.B << 0.020, 2.0e-4, 3.3e-7;
    p.C = Eigen::MatrixXd::Identity(3, 3);
    p.D = Eigen::MatrixXd::Zero(3, 1);
    p.period_s = 0.01;
    return p;
}

/// Feedback controller u+ = -[3.380 3.417 1.846] y - 0.322 u for
/// plant_p2. Encoded with one controller state z mirroring the command:
/// z and u follow the same recursion in e = -y, so z_t = u_t and the
/// printed feedback law is recovered exactly.
inline StateSpace controller_c2() {
    StateSpace c;
    c.A = Eigen::MatrixXd::Constant(1, 1, -0.322);
    c.B.resize(1, 3);
    c.B << 3.380, 3.417, 1.846;
    c.C = Eigen::MatrixXd::Constant(1, 1, -0.322);
    c.D.resize(1, 3);
    c.D << 3.380, 3.417, 1.846;
    c.period_s = 0.01;
    return c;
}

struct NamedSystem {
    StateSpace plant;
    StateSpace controller;
};

inline NamedSystem builtin_system(std::string_view name) {
    if (name == "p1c1") return {plant_p1(), controller_c1()};
    if (name == "p2c2") return {plant_p2(), controller_c2()};
    throw ParseError("unknown built-in system \"" + std::string(name) + "\" (expected \"p1c1\" or \"p2c2\")");
}

} // namespace whstab
