#pragma once

// Umbrella header.

#include "deid/assignment.hpp"
#include "deid/chains.hpp"
#include "deid/coref_eval.hpp"
#include "deid/errors.hpp"
#include "deid/gazetteer.hpp"
#include "deid/lexicon.hpp"
#include "deid/ner.hpp"
#include "deid/person_name.hpp"
#include "deid/pipeline.hpp"
#include "deid/redact.hpp"
#include "deid/reports.hpp"
#include "deid/score.hpp"
#include "deid/segment.hpp"
#include "deid/span_eval.hpp"
#include "deid/standoff.hpp"
#include "deid/text.hpp"
#include "deid/unicode.hpp"
