#pragma once

#include "cvoml/criteria.hpp"
#include "cvoml/gaussian.hpp"
#include "cvoml/model.hpp"
#include "cvoml/oracle.hpp"
#include "cvoml/sweep.hpp"
#include "cvoml/types.hpp"
