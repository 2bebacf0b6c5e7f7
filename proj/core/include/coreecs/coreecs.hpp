#pragma once

#include "coreecs/entity.hpp"
#include "coreecs/errors.hpp"
#include "coreecs/fuzz.hpp"
#include "coreecs/mutation.hpp"
#include "coreecs/parallel.hpp"
#include "coreecs/query.hpp"
#include "coreecs/safety.hpp"
#include "coreecs/scenario.hpp"
#include "coreecs/schedule.hpp"
#include "coreecs/schema.hpp"
#include "coreecs/state.hpp"
#include "coreecs/system.hpp"
#include "coreecs/value.hpp"
