#pragma once

#include "loh/learners/bayes.hpp"
#include "loh/learners/clustering.hpp"
#include "loh/learners/dataset.hpp"
#include "loh/learners/incongruity_map.hpp"
#include "loh/learners/knn.hpp"
#include "loh/learners/linear.hpp"
#include "loh/learners/tree.hpp"
