#pragma once

#include "rat.hpp"
#include "xreal.hpp"
#include "surd.hpp"
#include "certify.hpp"
#include "ellipsoid.hpp"
#include "ech.hpp"
#include "rules.hpp"
#include "decide.hpp"
#include "certificate.hpp"
#include "planner.hpp"
#include "stability.hpp"
