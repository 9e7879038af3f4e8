#pragma once

#include "tsg/errors.hpp"
#include "tsg/transformation.hpp"
#include "tsg/semigroup.hpp"
#include "tsg/green.hpp"
#include "tsg/group.hpp"
#include "tsg/rees.hpp"
#include "tsg/schutzenberger.hpp"
#include "tsg/rational.hpp"
#include "tsg/linalg.hpp"
#include "tsg/lp.hpp"
#include "tsg/stochastic.hpp"
#include "tsg/matrix_io.hpp"
#include "tsg/automata.hpp"
#include "tsg/automaton_io.hpp"
#include "tsg/wreath.hpp"
#include "tsg/holonomy.hpp"
#include "tsg/zeiger.hpp"
#include "tsg/module.hpp"
#include "tsg/representation.hpp"
#include "tsg/report.hpp"
