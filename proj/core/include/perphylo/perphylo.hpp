#pragma once

#include "perphylo/bitset.hpp"
#include "perphylo/compatibility.hpp"
#include "perphylo/extended_matrix.hpp"
#include "perphylo/generator.hpp"
#include "perphylo/matrix.hpp"
#include "perphylo/oracle.hpp"
#include "perphylo/phylogeny.hpp"
#include "perphylo/red_black_graph.hpp"
#include "perphylo/search.hpp"
