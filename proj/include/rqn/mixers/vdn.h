#ifndef RQN_MIXERS_VDN_H_
#define RQN_MIXERS_VDN_H_

#include <numeric>
#include <span>

#include "rqn/nn/graph.h"

namespace rqn::mixers {

// Q_tot = sum_i Q_i.
inline double vdn_mix(std::span<const double> q) { return std::accumulate(q.begin(), q.end(), 0.0); }

// B x N chosen values -> B x 1.
inline nn::Var vdn_mix(nn::Graph& g, nn::Var q) { return g.sum_cols(q); }

}  // namespace rqn::mixers

#endif  // RQN_MIXERS_VDN_H_
