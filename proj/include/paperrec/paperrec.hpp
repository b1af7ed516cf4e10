#pragma once

// Convenience umbrella: the whole library in one include.

#include "paperrec/aggregate.hpp"
#include "paperrec/citation_graph.hpp"
#include "paperrec/cite_recommenders.hpp"
#include "paperrec/coauthor.hpp"
#include "paperrec/core.hpp"
#include "paperrec/corpus.hpp"
#include "paperrec/engine.hpp"
#include "paperrec/evaluate.hpp"
#include "paperrec/snapshot.hpp"
#include "paperrec/tfidf.hpp"
