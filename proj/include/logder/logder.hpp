#pragma once

#include "logder/arrangement.hpp"
#include "logder/catalog.hpp"
#include "logder/dependencies.hpp"
#include "logder/derivations.hpp"
#include "logder/induction.hpp"
#include "logder/lattice.hpp"
#include "logder/mpoly.hpp"
#include "logder/qmatrix.hpp"
#include "logder/rational.hpp"
#include "logder/report.hpp"
#include "logder/scan.hpp"
