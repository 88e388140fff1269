#pragma once

#include "bondseries/closed_form.hpp"
#include "bondseries/config.hpp"
#include "bondseries/error.hpp"
#include "bondseries/fd_solver.hpp"
#include "bondseries/genpoly.hpp"
#include "bondseries/model.hpp"
#include "bondseries/series.hpp"
#include "bondseries/tables.hpp"
