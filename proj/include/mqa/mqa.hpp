#pragma once

#include "mqa/ascii.hpp"
#include "mqa/camera.hpp"
#include "mqa/categories.hpp"
#include "mqa/corpus_io.hpp"
#include "mqa/errors.hpp"
#include "mqa/evaluate.hpp"
#include "mqa/generate.hpp"
#include "mqa/markup.hpp"
#include "mqa/metrics.hpp"
#include "mqa/numeric.hpp"
#include "mqa/parallel.hpp"
#include "mqa/rng.hpp"
#include "mqa/scene.hpp"
#include "mqa/stats.hpp"
#include "mqa/stem.hpp"
#include "mqa/templates.hpp"
#include "mqa/tokenize.hpp"
