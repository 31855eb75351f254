#pragma once

#include "gwdict/approx.hpp"
#include "gwdict/dictionary.hpp"
#include "gwdict/error.hpp"
#include "gwdict/experiments.hpp"
#include "gwdict/graph.hpp"
#include "gwdict/io.hpp"
#include "gwdict/matrix.hpp"
#include "gwdict/multires.hpp"
#include "gwdict/parallel.hpp"
#include "gwdict/partition.hpp"
#include "gwdict/signals.hpp"
#include "gwdict/spectral.hpp"
