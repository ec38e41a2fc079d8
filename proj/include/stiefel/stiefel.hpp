#ifndef STIEFEL_STIEFEL_HPP
#define STIEFEL_STIEFEL_HPP

#include "stiefel/condition.hpp"
#include "stiefel/equivariance.hpp"
#include "stiefel/error.hpp"
#include "stiefel/gram_schmidt.hpp"
#include "stiefel/homotopy.hpp"
#include "stiefel/householder.hpp"
#include "stiefel/io.hpp"
#include "stiefel/matrix.hpp"
#include "stiefel/parallel.hpp"
#include "stiefel/random.hpp"
#include "stiefel/types.hpp"

#endif // STIEFEL_STIEFEL_HPP
