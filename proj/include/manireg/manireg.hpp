#pragma once

#include "manireg/datasets.hpp"
#include "manireg/graph.hpp"
#include "manireg/io.hpp"
#include "manireg/kernels.hpp"
#include "manireg/learn.hpp"
#include "manireg/manifold.hpp"
#include "manireg/spectral.hpp"
#include "manireg/version.hpp"
