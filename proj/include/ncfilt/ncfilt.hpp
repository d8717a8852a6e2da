#pragma once

// Umbrella header.

#include "ncfilt/auslander.hpp"
#include "ncfilt/automorphism.hpp"
#include "ncfilt/cli.hpp"
#include "ncfilt/errors.hpp"
#include "ncfilt/linsolve.hpp"
#include "ncfilt/parse.hpp"
#include "ncfilt/poly.hpp"
#include "ncfilt/presentation.hpp"
#include "ncfilt/report.hpp"
#include "ncfilt/rewrite.hpp"
#include "ncfilt/scalar.hpp"
#include "ncfilt/skew.hpp"
#include "ncfilt/word.hpp"
#include "ncfilt/zoo.hpp"
