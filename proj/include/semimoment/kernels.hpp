#pragma once

// Data-parallel inner loops of the moment machinery.
//
// `serial` is the reference implementation. `parallel` splits the same loops
// across OpenMP threads by output entry, so every output is summed in the same
// order and the two agree bit for bit. Without OpenMP `parallel` runs serially.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "semimoment/moment.hpp"
#include "semimoment/polyring.hpp"

namespace semimoment::kernels {

namespace serial {

/// out[k] = sum_i weights[i] * basis[k](points[i]).
std::vector<double> atom_moments(std::span<const Monomial> basis, std::span<const Point> points,
                                 std::span<const double> weights);

/// entries(a, b) = L(g m_a m_b), magnitude(a, b) = sum_c |g_c| |L(m_c m_a m_b)|.
void localizing_entries(const MomentFunctional& L, std::span<const Monomial> rows, const Polynomial& g,
                        Eigen::MatrixXd& entries, Eigen::MatrixXd& magnitude);

}  // namespace serial

namespace parallel {

std::vector<double> atom_moments(std::span<const Monomial> basis, std::span<const Point> points,
                                 std::span<const double> weights);

void localizing_entries(const MomentFunctional& L, std::span<const Monomial> rows, const Polynomial& g,
                        Eigen::MatrixXd& entries, Eigen::MatrixXd& magnitude);

}  // namespace parallel

/// Worker threads available to the parallel kernels (1 without OpenMP).
int max_threads();

}  // namespace semimoment::kernels
