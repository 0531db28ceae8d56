/* corpus.hpp -- corpus I/O and the synthetic-redundancy generator
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arcane/assertion.hpp"

namespace arcane {

struct CorpusEntry {
    std::string id;
    std::optional<std::string> clock;
    std::string text;
};

struct Corpus {
    std::string name;
    std::vector<CorpusEntry> entries;
    std::map<std::string, std::string> metadata;
    std::vector<Assertion> parsed;  // one per entry, eagerly parsed
};

/// Load and eagerly parse; duplicate ids and parse failures raise
/// CorpusError naming the offending assertion.
Corpus load_corpus(const std::string& path);
Corpus corpus_from_json_text(const std::string& text, const std::string& origin);

void save_corpus(const Corpus& corpus, const std::string& path);
std::string corpus_to_json_text(const Corpus& corpus);

/// Build a corpus directly from assertions (ids kept).
Corpus corpus_from_assertions(std::string name, const std::vector<Assertion>& assertions);

enum class PlantClass {
    Duplicate,          // alpha-renamed copy
    Inflation,          // idempotence / absorption inverses on the consequent
    ConsequentVariant,  // same antecedent, restructured or projected consequent
    AntecedentVariant,  // same consequent, restructured or projected antecedent
    EntailedWeakening,  // implied by the base (vacuous or fresh-atom weakening)
};

const char* plant_class_name(PlantClass c);

struct GroundTruthEntry {
    std::string base_id;
    PlantClass plant_class;
    bool genuine_split = false;  // projection/fresh-atom form (not key-equivalent)
};

struct GeneratorOptions {
    std::vector<PlantClass> classes = {
        PlantClass::Duplicate, PlantClass::Inflation, PlantClass::ConsequentVariant,
        PlantClass::AntecedentVariant, PlantClass::EntailedWeakening};
    /// Fraction of variant/weakening plants drawn in their genuinely weaker
    /// form. Those forms need in-cluster pairwise rules to collapse; the
    /// key-equivalent forms collapse under default clustering thresholds.
    double genuine_fraction = 0.1;
};

struct SyntheticCorpus {
    Corpus corpus;
    std::map<std::string, GroundTruthEntry> ground_truth;  // planted id -> base
};

/// n base assertions over disjoint atom namespaces (at most 4 atoms, delays
/// at most 2), r planted redundancies per base. Deterministic in the seed.
SyntheticCorpus generate_synthetic(int n, int r, std::uint64_t seed,
                                   const GeneratorOptions& options = {});

}  // namespace arcane
