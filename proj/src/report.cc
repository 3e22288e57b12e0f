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

#include "cie/report.h"

#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>

#include "cie/error.h"

namespace cie {
namespace {

std::string Fixed(double value, int precision = 4) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(precision) << value;
  return ss.str();
}

std::string LabelName(ClassId label, const Dataset& dataset) {
  return label == kAbstain ? std::string("ABSTAIN")
                           : dataset.class_name(label);
}

}  // namespace

Json ItemsetRecord(const ConfidentItemset& ci, const Dataset& dataset) {
  Json concepts = Json::array();
  for (ConceptIndex c : ci.itemset.items) {
    concepts.push_back(dataset.concept_id(c));
  }
  Json record;
  record["concepts"] = concepts;
  record["confidence"] = ci.confidence;
  return record;
}

Json InstanceRecord(const InstanceExplanation& e, const Dataset& dataset) {
  Json record;
  record["sample_id"] = e.sample_id;
  record["surrogate_label"] = LabelName(e.surrogate_label, dataset);
  Json per_class = Json::array();
  for (std::size_t c = 0; c < e.matched.size(); ++c) {
    Json entry;
    entry["class"] = dataset.class_name(static_cast<ClassId>(c));
    entry["cs"] = e.scores[c];
    Json itemsets = Json::array();
    for (const auto& ci : e.matched[c]) {
      itemsets.push_back(ItemsetRecord(ci, dataset));
    }
    entry["itemsets"] = itemsets;
    per_class.push_back(entry);
  }
  record["per_class"] = per_class;
  return record;
}

Json ClassRecord(const ClassExplanation& e, const Dataset& dataset) {
  Json record;
  record["class"] = dataset.class_name(e.class_id);
  Json itemsets = Json::array();
  for (const auto& ci : e.itemsets) {
    itemsets.push_back(ItemsetRecord(ci, dataset));
  }
  record["itemsets"] = itemsets;
  Json props;
  props["fidelity"] = e.properties.fidelity;
  props["size"] = e.properties.size;
  props["num_concepts"] = e.properties.num_concepts;
  props["max_length"] = e.properties.max_length;
  props["overlap"] = e.properties.itemset_overlap;
  props["coverage"] = e.properties.coverage;
  record["properties"] = props;
  record["objective"] = e.objective;
  return record;
}

Json GlobalRecord(const GlobalExplanation& g, const Dataset& dataset) {
  Json record;
  Json units = Json::array();
  for (const auto& ci : g.units) {
    Json unit;
    unit["class"] = dataset.class_name(ci.class_id);
    Json item = ItemsetRecord(ci, dataset);
    unit["concepts"] = item["concepts"];
    unit["confidence"] = item["confidence"];
    units.push_back(unit);
  }
  record["units"] = units;
  record["covered"] = g.covered;
  record["conflicted"] = g.conflicted;
  return record;
}

Json ReportRecord(const EvalReport& report, const Dataset& dataset,
                  const Json& header) {
  Json record;
  record["header"] = header;
  record["seed"] = report.seed;
  record["samples"] = dataset.size();
  record["instance_fidelity"] = report.instance_fidelity;
  record["abstain_rate"] = report.abstain_rate;
  record["classwise_fidelity"] = report.classwise_fidelity;
  Json classes = Json::array();
  for (const auto& e : report.class_explanations) {
    classes.push_back(ClassRecord(e, dataset));
  }
  record["class_explanations"] = classes;
  if (!report.curves.empty()) {
    Json curves = Json::object();
    for (const CurvePoint& p : report.curves) {
      Json point;
      point["budget"] = p.budget;
      point["fidelity"] = p.fidelity;
      curves[SweepAxisName(p.axis)].push_back(point);
    }
    record["curves"] = curves;
  }
  if (!report.baselines.empty()) {
    Json baselines = Json::array();
    for (const BaselineResult& b : report.baselines) {
      Json entry;
      entry["kind"] = BaselineKindName(b.config.kind);
      entry["n_words"] = b.config.n_words;
      if (b.config.kind == BaselineKind::kRandom) entry["seed"] = b.config.seed;
      entry["fidelity"] = b.fidelity;
      entry["abstain_rate"] = b.abstain_rate;
      Json words = Json::object();
      for (std::size_t c = 0; c < b.words.size(); ++c) {
        words[dataset.class_name(static_cast<ClassId>(c))] = b.words[c];
      }
      entry["words"] = words;
      baselines.push_back(entry);
    }
    record["baselines"] = baselines;
  }
  return record;
}

void WriteSummary(std::ostream& out, const Json& report) {
  try {
    out << "samples                 " << report.at("samples").get<int>()
        << '\n';
    out << "seed                    " << report.at("seed").get<std::uint64_t>()
        << '\n';
    out << "instance fidelity       "
        << Fixed(report.at("instance_fidelity").get<double>()) << '\n';
    out << "abstain rate            "
        << Fixed(report.at("abstain_rate").get<double>()) << '\n';
    out << "class-wise fidelity     "
        << Fixed(report.at("classwise_fidelity").get<double>()) << '\n';
    out << '\n'
        << std::left << std::setw(20) << "class" << std::right
        << std::setw(10) << "fidelity" << std::setw(6) << "size"
        << std::setw(10) << "concepts" << std::setw(8) << "maxlen"
        << std::setw(9) << "overlap" << std::setw(10) << "coverage"
        << std::setw(11) << "objective" << '\n';
    for (const Json& c : report.at("class_explanations")) {
      const Json& p = c.at("properties");
      out << std::left << std::setw(20) << c.at("class").get<std::string>()
          << std::right << std::setw(10)
          << Fixed(p.at("fidelity").get<double>()) << std::setw(6)
          << p.at("size").get<int>() << std::setw(10)
          << p.at("num_concepts").get<int>() << std::setw(8)
          << p.at("max_length").get<int>() << std::setw(9)
          << p.at("overlap").get<int>() << std::setw(10)
          << p.at("coverage").get<int>() << std::setw(11)
          << Fixed(c.at("objective").get<double>()) << '\n';
    }
    if (report.contains("curves")) {
      out << "\ncurves\n";
      for (const auto& [axis, points] : report["curves"].items()) {
        out << "  " << std::left << std::setw(6) << axis << std::right;
        for (const Json& p : points) {
          out << "  " << p.at("budget").get<int>() << ":"
              << Fixed(p.at("fidelity").get<double>());
        }
        out << '\n';
      }
    }
    if (report.contains("baselines")) {
      out << "\nbaselines\n";
      for (const Json& b : report["baselines"]) {
        out << "  " << std::left << std::setw(8)
            << b.at("kind").get<std::string>() << std::right
            << " N=" << b.at("n_words").get<int>();
        if (b.contains("seed")) {
          out << " seed=" << b["seed"].get<std::uint64_t>();
        }
        out << "  fidelity " << Fixed(b.at("fidelity").get<double>()) << '\n';
      }
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed report: ") +
                                       e.what());
  }
}

void WriteCurvesCsv(std::ostream& out, std::span<const CurvePoint> curves) {
  out << "axis,budget,fidelity\n";
  char buf[32];
  for (const CurvePoint& p : curves) {
    std::snprintf(buf, sizeof(buf), "%.17g", p.fidelity);
    out << SweepAxisName(p.axis) << ',' << p.budget << ',' << buf << '\n';
  }
}

}  // namespace cie
