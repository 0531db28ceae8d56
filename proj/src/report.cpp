/* report.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "arcane/common.hpp"

namespace arcane {

std::string format_ratio(double ratio) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%%", ratio * 100.0);
    return buf;
}

std::string report_to_json(const ReductionReport& r) {
    nlohmann::ordered_json j;
    j["corpus"] = r.corpus_name;
    j["original_count"] = r.original_count;
    j["reduced_count"] = r.reduced_count;
    j["reduction_ratio"] = r.reduction_ratio;
    j["reduction_ratio_pct"] = format_ratio(r.reduction_ratio);
    j["atoms_before"] = r.atoms_before;
    j["atoms_after"] = r.atoms_after;
    j["processing_ms"] = r.processing_ms;

    j["rules"] = nlohmann::ordered_json::object();
    for (const char* name : {"R1", "R2", "R3", "R4", "R5"}) {
        nlohmann::ordered_json rule;
        auto ait = r.rule_applications.find(name);
        auto dit = r.rule_removed.find(name);
        rule["applications"] = ait == r.rule_applications.end() ? 0 : ait->second;
        rule["assertions_removed"] = dit == r.rule_removed.end() ? 0 : dit->second;
        j["rules"][name] = std::move(rule);
    }

    j["clusters"] = nlohmann::ordered_json::array();
    for (const auto& c : r.clusters) {
        nlohmann::ordered_json cj;
        cj["index"] = c.index;
        cj["size_before"] = c.size_before;
        cj["size_after"] = c.size_after;
        cj["reward"] = c.reward;
        cj["iterations"] = c.iterations;
        cj["millis"] = c.millis;
        j["clusters"].push_back(std::move(cj));
    }

    nlohmann::ordered_json cls;
    cls["coarse_groups"] = r.coarse_groups;
    cls["acceptance_calls"] = r.acceptance_calls;
    cls["truth_table_pairs"] = r.truth_table_pairs;
    cls["lasso_pairs"] = r.lasso_pairs;
    cls["nl_only_pairs"] = r.nl_only_pairs;
    j["classification"] = std::move(cls);

    nlohmann::ordered_json cert;
    cert["incidents"] = r.certificate_incidents;
    cert["end_to_end_ok"] = r.end_to_end_certified;
    cert["samples"] = r.certificate_samples;
    cert["failures"] = r.certificate_failures;
    j["certificates"] = std::move(cert);

    j["falsum_flagged"] = r.falsum_flagged;

    nlohmann::ordered_json cfg;
    cfg["alpha"] = r.alpha;
    cfg["beta"] = r.beta;
    cfg["threshold"] = r.threshold;
    cfg["lasso_samples"] = r.lasso_samples;
    cfg["seed"] = r.seed;
    cfg["workers"] = r.workers;
    cfg["mcts_iterations"] = r.mcts_iterations;
    cfg["patience"] = r.patience;
    cfg["embedder"] = r.embedder;
    j["config"] = std::move(cfg);

    return j.dump(2) + "\n";
}

std::string report_to_text(const ReductionReport& r) {
    std::ostringstream out;
    out << "Assertion reduction report: " << r.corpus_name << "\n";
    out << "---------------------------------------------------------------\n";
    out << "  Design            N orig    N reduced   Ratio      PT(s)\n";
    char line[160];
    std::snprintf(line, sizeof(line), "  %-16s %7d %11d   %-8s %8.2f\n", r.corpus_name.c_str(),
                  r.original_count, r.reduced_count, format_ratio(r.reduction_ratio).c_str(),
                  r.processing_ms / 1000.0);
    out << line;
    out << "---------------------------------------------------------------\n";
    out << "  atoms: " << r.atoms_before << " -> " << r.atoms_after << "\n";
    out << "  rule applications (assertions removed):\n";
    for (const char* name : {"R1", "R2", "R3", "R4", "R5"}) {
        auto ait = r.rule_applications.find(name);
        auto dit = r.rule_removed.find(name);
        out << "    " << name << ": " << (ait == r.rule_applications.end() ? 0 : ait->second)
            << " (" << (dit == r.rule_removed.end() ? 0 : dit->second) << ")\n";
    }
    out << "  clusters: " << r.clusters.size() << " (coarse groups " << r.coarse_groups << ")\n";
    out << "  certificates: " << (r.end_to_end_certified ? "ok" : "FAILED") << " on "
        << r.certificate_samples << " lassos, " << r.certificate_incidents
        << " rollback incident(s)\n";
    if (!r.falsum_flagged.empty()) {
        out << "  falsum assertions kept and flagged:";
        for (const auto& id : r.falsum_flagged) out << " " << id;
        out << "\n";
    }
    return out.str();
}

void emit_report(const ReductionReport& r, const std::string& format, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw CorpusError(path + ": cannot open for writing");
    out << (format == "text" ? report_to_text(r) : report_to_json(r));
}

}  // namespace arcane
