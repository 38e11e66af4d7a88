#pragma once

#include "affapp/approx.hpp"
#include "affapp/bounds.hpp"
#include "affapp/cayley.hpp"
#include "affapp/constructions.hpp"
#include "affapp/constructors.hpp"
#include "affapp/errors.hpp"
#include "affapp/group.hpp"
#include "affapp/jk.hpp"
#include "affapp/morphism.hpp"
#include "affapp/report.hpp"
