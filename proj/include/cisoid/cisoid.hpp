#ifndef CISOID_CISOID_HPP
#define CISOID_CISOID_HPP

#include "cisoid/types.hpp"
#include "cisoid/model.hpp"
#include "cisoid/matrices.hpp"
#include "cisoid/linalg.hpp"
#include "cisoid/esprit.hpp"
#include "cisoid/pencil.hpp"
#include "cisoid/metrics.hpp"
#include "cisoid/bounds.hpp"

#endif // CISOID_CISOID_HPP
