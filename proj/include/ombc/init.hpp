#pragma once

#include "ombc/gmm.hpp"
#include "ombc/matrix.hpp"

namespace ombc {

/// How each fit after the first is initialized: Update carries the previous
/// responsibility matrix forward minus the removed row; Reinit reruns
/// hierarchical clustering from scratch.
enum class InitScheme { Update, Reinit };

/// Agglomerative clustering with Ward linkage on Euclidean distances, cut at
/// `groups` clusters, returned as an n x G one-hot responsibility matrix.
/// Nearest-neighbour-chain agglomeration; merge ties break toward the lowest
/// pair of indices. Throws TooFewPoints if n < groups.
Matrix hier_init(const DataMatrix& data, std::size_t groups);

/// Initial responsibilities for the fit after removing `removed_row` (an
/// index into the previous step's data).
Matrix next_init(const MixtureFit& prev_fit, std::size_t removed_row, InitScheme scheme,
                 const DataMatrix& data_after_removal);

}  // namespace ombc
