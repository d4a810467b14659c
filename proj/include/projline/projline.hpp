#pragma once

#include "projline/cli.hpp"
#include "projline/coord.hpp"
#include "projline/coordinatize.hpp"
#include "projline/field.hpp"
#include "projline/groupoid.hpp"
#include "projline/rapport.hpp"
#include "projline/report.hpp"
#include "projline/search.hpp"
