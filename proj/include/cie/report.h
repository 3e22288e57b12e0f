// Copyright 2026 The CIE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serialized forms of explanations and evaluation reports.

#ifndef CIE_REPORT_H_
#define CIE_REPORT_H_

#include <ostream>
#include <span>

#include "cie/class_explainer.h"
#include "cie/corpus.h"
#include "cie/evaluation.h"
#include "cie/instance_explainer.h"
#include "json.hpp"

namespace cie {

using Json = nlohmann::ordered_json;

// {"concepts": [...], "confidence": x}
Json ItemsetRecord(const ConfidentItemset& ci, const Dataset& dataset);

// {sample_id, surrogate_label, per_class: [{class, cs, itemsets}]}
Json InstanceRecord(const InstanceExplanation& e, const Dataset& dataset);

// {class, itemsets, properties: {...}, objective}
Json ClassRecord(const ClassExplanation& e, const Dataset& dataset);

// {units: [{class, concepts, confidence}], covered, conflicted}
Json GlobalRecord(const GlobalExplanation& g, const Dataset& dataset);

// Full machine-readable report. `header` is copied in verbatim first.
Json ReportRecord(const EvalReport& report, const Dataset& dataset,
                  const Json& header);

// Human-readable table rendered from a report record, so it can be
// regenerated from a saved report.
void WriteSummary(std::ostream& out, const Json& report);

// axis,budget,fidelity
void WriteCurvesCsv(std::ostream& out, std::span<const CurvePoint> curves);

}  // namespace cie

#endif  // CIE_REPORT_H_
