#ifndef BOOLINV_HPP_
#define BOOLINV_HPP_

#include "boolinv/af.hpp"
#include "boolinv/boolean.hpp"
#include "boolinv/cstar.hpp"
#include "boolinv/error.hpp"
#include "boolinv/fixed.hpp"
#include "boolinv/germs.hpp"
#include "boolinv/groupoid.hpp"
#include "boolinv/inverse_monoid.hpp"
#include "boolinv/json_io.hpp"
#include "boolinv/linear.hpp"
#include "boolinv/matrix.hpp"
#include "boolinv/means.hpp"
#include "boolinv/order.hpp"
#include "boolinv/partial_bijection.hpp"
#include "boolinv/rational.hpp"
#include "boolinv/selfsim.hpp"
#include "boolinv/version.hpp"

#endif  // BOOLINV_HPP_
