#ifndef CONFCALC_CONFCALC_HPP
#define CONFCALC_CONFCALC_HPP

#include "confcalc/configuration.hpp"
#include "confcalc/error.hpp"
#include "confcalc/fp.hpp"
#include "confcalc/improve.hpp"
#include "confcalc/matrix.hpp"
#include "confcalc/poset.hpp"
#include "confcalc/quiver.hpp"
#include "confcalc/subobject.hpp"

#endif  // CONFCALC_CONFCALC_HPP
