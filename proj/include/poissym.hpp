#pragma once

// Everything in one include.

#include "poissym/cli.hpp"
#include "poissym/derham.hpp"
#include "poissym/gbengine.hpp"
#include "poissym/poisson.hpp"
#include "poissym/polyring.hpp"
#include "poissym/problem_file.hpp"
#include "poissym/quotient.hpp"
#include "poissym/report.hpp"
#include "poissym/tangent.hpp"
#include "poissym/verify.hpp"
