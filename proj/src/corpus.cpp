/* corpus.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "arcane/common.hpp"

namespace arcane {

namespace {

Corpus parse_corpus_json(const nlohmann::json& j, const std::string& origin) {
    Corpus corpus;
    if (!j.is_object() || !j.contains("assertions") || !j["assertions"].is_array())
        throw CorpusError(origin + ": corpus must be an object with an \"assertions\" array");
    corpus.name = j.value("name", std::string("corpus"));
    if (j.contains("metadata") && j["metadata"].is_object()) {
        for (auto it = j["metadata"].begin(); it != j["metadata"].end(); ++it) {
            corpus.metadata[it.key()] =
                it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
        }
    }

    std::set<std::string> seen;
    for (const auto& entry : j["assertions"]) {
        CorpusEntry e;
        if (!entry.contains("id") || !entry["id"].is_string())
            throw CorpusError(origin + ": assertion entry without a string \"id\"");
        e.id = entry["id"].get<std::string>();
        if (!seen.insert(e.id).second)
            throw CorpusError(origin + ": duplicate assertion id \"" + e.id + "\"");
        if (entry.contains("clock") && !entry["clock"].is_null())
            e.clock = entry["clock"].get<std::string>();
        if (!entry.contains("text") || !entry["text"].is_string())
            throw CorpusError(origin + ": assertion \"" + e.id + "\" has no \"text\"");
        e.text = entry["text"].get<std::string>();

        std::string full = e.clock ? "@(posedge " + *e.clock + ") " + e.text : e.text;
        try {
            corpus.parsed.push_back(parse_assertion(full, e.id));
        } catch (const ParseError& err) {
            throw CorpusError(origin + ": assertion \"" + e.id + "\": " + err.what());
        }
        corpus.entries.push_back(std::move(e));
    }
    return corpus;
}

}  // namespace

Corpus corpus_from_json_text(const std::string& text, const std::string& origin) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw CorpusError(origin + ": malformed JSON");
    return parse_corpus_json(j, origin);
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return corpus_from_json_text(buf.str(), path);
}

std::string corpus_to_json_text(const Corpus& corpus) {
    nlohmann::ordered_json j;
    j["name"] = corpus.name;
    j["assertions"] = nlohmann::ordered_json::array();
    for (const auto& e : corpus.entries) {
        nlohmann::ordered_json entry;
        entry["id"] = e.id;
        entry["clock"] = e.clock ? nlohmann::ordered_json(*e.clock) : nlohmann::ordered_json();
        entry["text"] = e.text;
        j["assertions"].push_back(std::move(entry));
    }
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : corpus.metadata) {
        nlohmann::json parsed = nlohmann::json::parse(v, nullptr, false);
        if (parsed.is_discarded())
            meta[k] = v;
        else
            meta[k] = parsed;
    }
    j["metadata"] = std::move(meta);
    return j.dump(2) + "\n";
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw CorpusError(path + ": cannot open for writing");
    out << corpus_to_json_text(corpus);
}

Corpus corpus_from_assertions(std::string name, const std::vector<Assertion>& assertions) {
    Corpus corpus;
    corpus.name = std::move(name);
    for (const Assertion& a : assertions) {
        corpus.entries.push_back({a.id, a.clock, print_assertion_body(a)});
        corpus.parsed.push_back(a);
    }
    return corpus;
}

const char* plant_class_name(PlantClass c) {
    switch (c) {
        case PlantClass::Duplicate:
            return "duplicate";
        case PlantClass::Inflation:
            return "inflation";
        case PlantClass::ConsequentVariant:
            return "consequent_variant";
        case PlantClass::AntecedentVariant:
            return "antecedent_variant";
        case PlantClass::EntailedWeakening:
            return "entailed_weakening";
    }
    return "?";
}

namespace {

struct BaseShape {
    std::string text;
    bool propositional = false;
    bool or_antecedent = false;
    std::vector<std::string> ante_atoms;
    std::vector<std::string> cons_atoms;
    std::string cons_expr;   // consequent expression text
    std::string cons_delay;  // "" or "##1 " / "##2 " prefix
    std::string ante_text;   // antecedent text (implications)
};

BaseShape make_base(int k, Rng& rng) {
    const std::string sa = "a" + std::to_string(k);
    const std::string sb = "b" + std::to_string(k);
    const std::string sc = "c" + std::to_string(k);
    const std::string sd = "d" + std::to_string(k);

    BaseShape base;
    const int shape = static_cast<int>(rng.below(4));

    // Consequent over {c, d}, never tautological, disjoint from antecedent.
    const int cons_kind = static_cast<int>(rng.below(3));
    if (cons_kind == 0) {
        base.cons_expr = sc;
        base.cons_atoms = {sc};
    } else if (cons_kind == 1) {
        base.cons_expr = sc + " && " + sd;
        base.cons_atoms = {sc, sd};
    } else {
        base.cons_expr = sc + " || !" + sd;
        base.cons_atoms = {sc, sd};
    }

    if (shape == 3) {
        base.propositional = true;
        base.text = base.cons_expr;
        return base;
    }

    const int delay = static_cast<int>(rng.below(3));  // 0, 1 or 2 cycles
    if (delay > 0) base.cons_delay = "##" + std::to_string(delay) + " ";

    if (shape == 2) {
        base.or_antecedent = true;
        base.ante_text = sa + " || " + sb;
        base.ante_atoms = {sa, sb};
    } else if (shape == 1) {
        base.ante_text = sa + " && " + sb;
        base.ante_atoms = {sa, sb};
    } else {
        base.ante_text = sa;
        base.ante_atoms = {sa};
    }
    base.text = base.ante_text + " |-> " + base.cons_delay + base.cons_expr;
    return base;
}

}  // namespace

SyntheticCorpus generate_synthetic(int n, int r, std::uint64_t seed,
                                   const GeneratorOptions& options) {
    SyntheticCorpus out;
    out.corpus.name = "synthetic_n" + std::to_string(n) + "_r" + std::to_string(r) + "_s" +
                      std::to_string(seed);
    out.corpus.metadata["generator_seed"] = std::to_string(seed);

    Rng rng(hash_combine(seed, 0x67656e00ull));

    for (int k = 0; k < n; ++k) {
        BaseShape base = make_base(k, rng);
        const std::string base_id = "g" + std::to_string(k);
        out.corpus.entries.push_back({base_id, std::nullopt, base.text});

        for (int p = 0; p < r; ++p) {
            const PlantClass cls =
                options.classes[rng.below(options.classes.size())];
            const bool genuine = rng.unit() < options.genuine_fraction;
            std::string text;
            bool was_genuine = false;

            switch (cls) {
                case PlantClass::Duplicate:
                    text = base.text;
                    break;

                case PlantClass::Inflation: {
                    // Idempotence or absorption inverse on the consequent.
                    const bool absorb = rng.below(4) == 0;
                    std::string inflated =
                        absorb ? "(" + base.cons_expr + ") && ((" + base.cons_expr + ") || " +
                                     base.cons_atoms[0] + ")"
                               : "(" + base.cons_expr + ") && (" + base.cons_expr + ")";
                    text = base.propositional
                               ? inflated
                               : base.ante_text + " |-> " + base.cons_delay + inflated;
                    break;
                }

                case PlantClass::ConsequentVariant: {
                    if (genuine && base.cons_atoms.size() > 1 && !base.propositional &&
                        base.cons_expr.find("&&") != std::string::npos) {
                        // Projection split: keep one conjunct (weaker).
                        text = base.ante_text + " |-> " + base.cons_delay + base.cons_atoms[0];
                        was_genuine = true;
                    } else {
                        // Key-equivalent restructuring: constant folding or
                        // commuted conjuncts (grouped by canonical keys).
                        std::string variant =
                            base.cons_atoms.size() > 1 &&
                                    base.cons_expr.find("&&") != std::string::npos
                                ? base.cons_atoms[1] + " && " + base.cons_atoms[0]
                                : "(" + base.cons_expr + ") && 1";
                        text = base.propositional
                                   ? variant
                                   : base.ante_text + " |-> " + base.cons_delay + variant;
                    }
                    break;
                }

                case PlantClass::AntecedentVariant: {
                    if (base.propositional) {
                        // No antecedent to vary; emit a duplicate instead.
                        text = base.text;
                    } else if (genuine && base.or_antecedent) {
                        // Projection split of the disjunctive trigger.
                        text = base.ante_atoms[0] + " |-> " + base.cons_delay + base.cons_expr;
                        was_genuine = true;
                    } else {
                        const char* op = base.or_antecedent ? " || " : " && ";
                        std::string variant;
                        if (base.ante_atoms.size() > 1)
                            variant = base.ante_atoms[1] + op + base.ante_atoms[0];
                        else
                            variant = base.ante_atoms[0] + op + base.ante_atoms[0];
                        text = "(" + variant + ") |-> " + base.cons_delay + base.cons_expr;
                    }
                    break;
                }

                case PlantClass::EntailedWeakening: {
                    if (base.propositional) {
                        // Weakening by a disjunct the expression already implies.
                        text = "(" + base.cons_expr + ") || (" + base.cons_expr + ")";
                    } else if (genuine) {
                        // Fresh-atom strengthening of the trigger: implied by
                        // the base, removable only by in-cluster subsumption.
                        text = "(" + base.ante_text + ") && e" + std::to_string(k) + " |-> " +
                               base.cons_delay + base.cons_expr;
                        was_genuine = true;
                    } else {
                        // Vacuous form: the strengthened trigger entails the
                        // weakened consequent outright.
                        text = "(" + base.ante_text + ") && " + base.ante_atoms[0] + " |-> " +
                               base.cons_delay + "(" + base.cons_expr + ") || " +
                               base.ante_atoms[0];
                    }
                    break;
                }
            }

            const std::string pid = base_id + "_p" + std::to_string(p);
            out.corpus.entries.push_back({pid, std::nullopt, text});
            out.ground_truth[pid] = {base_id, cls, was_genuine};
        }
    }

    for (const auto& e : out.corpus.entries)
        out.corpus.parsed.push_back(parse_assertion(e.text, e.id));

    nlohmann::ordered_json truth = nlohmann::ordered_json::object();
    for (const auto& [pid, gt] : out.ground_truth) {
        nlohmann::ordered_json rec;
        rec["base"] = gt.base_id;
        rec["class"] = plant_class_name(gt.plant_class);
        rec["genuine_split"] = gt.genuine_split;
        truth[pid] = std::move(rec);
    }
    out.corpus.metadata["ground_truth"] = truth.dump();
    return out;
}

}  // namespace arcane
