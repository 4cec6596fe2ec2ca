#pragma once

#include "usum/bootstrap.hpp"
#include "usum/embedder.hpp"
#include "usum/error.hpp"
#include "usum/graph.hpp"
#include "usum/io.hpp"
#include "usum/pipeline.hpp"
#include "usum/rouge.hpp"
#include "usum/scorer.hpp"
#include "usum/selector.hpp"
#include "usum/textcore.hpp"
