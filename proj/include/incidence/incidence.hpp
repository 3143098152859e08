#pragma once

#include "incidence/error.hpp"
#include "incidence/scalar.hpp"
#include "incidence/preorder.hpp"
#include "incidence/element.hpp"
#include "incidence/exactla.hpp"
#include "incidence/transitive.hpp"
#include "incidence/operator.hpp"
#include "incidence/spaces.hpp"
#include "incidence/interchange.hpp"
#include "incidence/random.hpp"
#include "incidence/suite.hpp"
#include "incidence/acceptance.hpp"
