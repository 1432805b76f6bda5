#pragma once

#include "posetramsey/oracle/colouring.hpp"
#include "posetramsey/oracle/cones.hpp"
#include "posetramsey/oracle/embedding.hpp"
#include "posetramsey/oracle/json_io.hpp"
#include "posetramsey/oracle/pivots.hpp"
#include "posetramsey/oracle/sampling.hpp"
#include "posetramsey/oracle/sets.hpp"
