#pragma once

#include "equiprob/geometry.hpp"
#include "equiprob/grammar.hpp"
#include "equiprob/phonology.hpp"
#include "equiprob/rational.hpp"
#include "equiprob/report.hpp"
#include "equiprob/simplex.hpp"
#include "equiprob/tableau.hpp"
#include "equiprob/tableau_io.hpp"
#include "equiprob/typology.hpp"
#include "equiprob/verifier.hpp"
