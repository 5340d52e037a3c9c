#pragma once

#include <cy4/equivariant.hpp>
#include <cy4/factored.hpp>
#include <cy4/gvtable_json.hpp>
#include <cy4/kclass.hpp>
#include <cy4/localcurve.hpp>
#include <cy4/parallel.hpp>
#include <cy4/poly.hpp>
#include <cy4/ratfun.hpp>
#include <cy4/rational.hpp>
#include <cy4/series.hpp>
