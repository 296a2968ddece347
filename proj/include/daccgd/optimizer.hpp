#pragma once

#include <Eigen/Dense>

#include "daccgd/consensus.hpp"
#include "daccgd/graph_sequence.hpp"
#include "daccgd/objectives.hpp"
#include "daccgd/params.hpp"
#include "daccgd/trace.hpp"

namespace daccgd {

// Accelerated outer loop with a T-round consensus projection per iteration.
// Every agent starts from the same x0. Stops early once f(x_mean) - f* <=
// params.epsilon; throws on non-finite iterates. The mixing-matrix stream
// advances globally across the run (round r of the whole run uses W^r).
RunTrace run_daccgd(const ProblemInstance& p, const GraphSequence& seq, const AlgoParams& params,
                    const Eigen::VectorXd& x0, long max_outer);

// Same loop, but with the caller supplying the stream (cursor threads across
// calls) and the reference minimizer, so tests can control both.
RunTrace run_daccgd(const ProblemInstance& p, MixingStream& stream, const AlgoParams& params,
                    const Eigen::VectorXd& x0, long max_outer, const Minimizer& ref);

// Gradient descent with inexact consensus projections:
// X^{k+1} = Consensus(X^k - gamma grad F(X^k), T).
RunTrace run_inexact_gd(const ProblemInstance& p, const GraphSequence& seq, double gamma,
                        int t_rounds, long max_iter, double epsilon);

RunTrace run_inexact_gd(const ProblemInstance& p, MixingStream& stream, double gamma,
                        int t_rounds, long max_iter, double epsilon, const Minimizer& ref);

}  // namespace daccgd
