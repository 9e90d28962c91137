#pragma once

// Everything at once.
#include "qf1ca/errors.hpp"
#include "qf1ca/core.hpp"
#include "qf1ca/automaton.hpp"
#include "qf1ca/wellformed.hpp"
#include "qf1ca/dynamics.hpp"
#include "qf1ca/transforms.hpp"
#include "qf1ca/classical.hpp"
#include "qf1ca/zoo.hpp"
#include "qf1ca/io.hpp"
