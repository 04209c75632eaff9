#pragma once

#include "builtin.hpp"
#include "error.hpp"
#include "extrapolate.hpp"
#include "fourier.hpp"
#include "lemma.hpp"
#include "model.hpp"
#include "residue.hpp"
#include "series.hpp"
#include "space_io.hpp"
