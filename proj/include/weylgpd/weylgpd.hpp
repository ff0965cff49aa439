#ifndef WEYLGPD_WEYLGPD_HPP
#define WEYLGPD_WEYLGPD_HPP

#include "weylgpd/error.hpp"
#include "weylgpd/exactlin.hpp"
#include "weylgpd/lp.hpp"
#include "weylgpd/cartan.hpp"
#include "weylgpd/arrangement.hpp"
#include "weylgpd/realization.hpp"
#include "weylgpd/subarr.hpp"
#include "weylgpd/builtins.hpp"
#include "weylgpd/demos.hpp"

#endif  // WEYLGPD_WEYLGPD_HPP
