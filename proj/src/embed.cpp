/* embed.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/embed.hpp"

#include <cctype>
#include <cmath>
#include <future>

#include "arcane/common.hpp"

// cpp-httplib is header-only; keep it out of our headers.
#include <httplib.h>
#include <json.hpp>

namespace arcane {

namespace {

std::string expr_phrase(const BoolExprPtr& e, bool nested = false) {
    switch (e->op) {
        case BoolOp::Atom:
            return e->atom;
        case BoolOp::Const:
            return e->value ? "true" : "false";
        case BoolOp::Not:
            return "not " + expr_phrase(e->children[0], true);
        case BoolOp::And:
        case BoolOp::Or: {
            const char* sep = e->op == BoolOp::And ? " and " : " or ";
            std::string out;
            for (size_t i = 0; i < e->children.size(); ++i) {
                if (i) out += sep;
                out += expr_phrase(e->children[i], true);
            }
            if (nested) return "(" + out + ")";
            return out;
        }
    }
    return {};
}

bool plural_subject(const BoolExprPtr& e) {
    return (e->op == BoolOp::And || e->op == BoolOp::Or) && e->children.size() >= 2;
}

std::string cycles_phrase(const Delay& d) {
    if (d.fixed()) {
        if (d.lo == 1) return "after 1 cycle";
        return "after " + std::to_string(d.lo) + " cycles";
    }
    return "after " + std::to_string(d.lo) + " to " + std::to_string(d.hi) + " cycles";
}

std::string antecedent_phrase(const Sequence& s) {
    std::string out;
    if (!(s.lead == Delay{})) out += cycles_phrase(s.lead) + " ";
    out += expr_phrase(s.head) + (plural_subject(s.head) ? " hold" : " holds");
    for (const auto& [d, e] : s.tail) {
        out += ", and " + cycles_phrase(d) + " " + expr_phrase(e) +
               (plural_subject(e) ? " hold" : " holds");
    }
    return out;
}

}  // namespace

NlSentence render_nl(const Assertion& input) {
    Assertion a = normalize(input);
    std::string text;
    if (a.clock) text += "on " + *a.clock + ", ";

    if (a.kind == AssertionKind::Propositional) {
        text += expr_phrase(a.consequent.head) + " must always hold.";
        return {text, a.id};
    }

    text += "if " + antecedent_phrase(a.antecedent) + ", then ";
    const Sequence& c = a.consequent;
    text += expr_phrase(c.head);
    for (const auto& [d, e] : c.tail) text += ", and " + cycles_phrase(d) + " " + expr_phrase(e);
    text += " must also hold";
    text += c.lead == Delay{} ? " in the same cycle" : " " + cycles_phrase(c.lead);
    text += ".";
    return {text, a.id};
}

std::vector<EmbeddingVector> HashEmbedder::embed(const std::vector<NlSentence>& batch) {
    if (batch.empty()) throw ContractError("embed: empty batch");

    std::vector<EmbeddingVector> out;
    out.reserve(batch.size());
    for (const auto& s : batch) {
        std::vector<std::string> tokens;
        std::string cur;
        for (char ch : s.text) {
            if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
                cur += ch;
            } else if (!cur.empty()) {
                tokens.push_back(cur);
                cur.clear();
            }
        }
        if (!cur.empty()) tokens.push_back(cur);

        EmbeddingVector v;
        v.values.assign(static_cast<size_t>(dim_), 0.0);
        auto add_feature = [&](const std::string& feat) {
            std::uint64_t h = fnv1a64(feat);
            size_t bucket = h % static_cast<std::uint64_t>(dim_);
            double sign = ((h >> 32) & 1) ? 1.0 : -1.0;
            v.values[bucket] += sign;
        };
        for (const auto& t : tokens) add_feature(t);
        for (size_t i = 0; i + 1 < tokens.size(); ++i) add_feature(tokens[i] + " " + tokens[i + 1]);

        double norm = 0.0;
        for (double x : v.values) norm += x * x;
        if (norm > 0.0) {
            norm = std::sqrt(norm);
            for (double& x : v.values) x /= norm;
        }
        out.push_back(std::move(v));
    }
    return out;
}

RemoteEmbedder::RemoteEmbedder(std::string base_url, int batch_size, int max_retries, int window)
    : base_url_(std::move(base_url)),
      batch_size_(batch_size),
      max_retries_(max_retries),
      window_(window) {}

namespace {

std::vector<EmbeddingVector> post_embed_batch(const std::string& base_url,
                                              const std::vector<NlSentence>& batch,
                                              size_t begin, size_t end, int max_retries) {
    nlohmann::json body;
    body["texts"] = nlohmann::json::array();
    for (size_t i = begin; i < end; ++i) body["texts"].push_back(batch[i].text);
    const std::string payload = body.dump();

    std::string last_error;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        httplib::Client client(base_url);
        client.set_connection_timeout(5);
        client.set_read_timeout(30);
        auto res = client.Post("/embed", payload, "application/json");
        if (!res) {
            last_error = "connection failed";
            continue;
        }
        if (res->status != 200) {
            last_error = "status " + std::to_string(res->status);
            continue;
        }
        nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("vectors") ||
            !parsed["vectors"].is_array()) {
            last_error = "malformed response body";
            continue;
        }
        const auto& vectors = parsed["vectors"];
        if (vectors.size() != end - begin) {
            last_error = "response length mismatch (" + std::to_string(vectors.size()) +
                         " vectors for " + std::to_string(end - begin) + " texts)";
            continue;
        }
        std::vector<EmbeddingVector> out;
        out.reserve(vectors.size());
        size_t dim = 0;
        for (const auto& vec : vectors) {
            EmbeddingVector v;
            for (const auto& x : vec) v.values.push_back(x.get<double>());
            if (dim == 0) dim = v.values.size();
            if (v.values.size() != dim || dim == 0) {
                last_error = "inconsistent vector dimensions";
                out.clear();
                break;
            }
            double norm = 0.0;
            for (double x : v.values) norm += x * x;
            if (norm > 0.0) {
                norm = std::sqrt(norm);
                for (double& x : v.values) x /= norm;
            }
            out.push_back(std::move(v));
        }
        if (!out.empty()) return out;
    }
    throw EmbedError("remote embedder failed after " + std::to_string(max_retries + 1) +
                     " attempts: " + last_error);
}

}  // namespace

std::vector<EmbeddingVector> RemoteEmbedder::embed(const std::vector<NlSentence>& batch) {
    if (batch.empty()) throw ContractError("embed: empty batch");

    std::vector<std::pair<size_t, size_t>> ranges;
    for (size_t begin = 0; begin < batch.size(); begin += static_cast<size_t>(batch_size_))
        ranges.emplace_back(begin,
                            std::min(batch.size(), begin + static_cast<size_t>(batch_size_)));

    std::vector<EmbeddingVector> out(batch.size());
    for (size_t r = 0; r < ranges.size(); r += static_cast<size_t>(window_)) {
        const size_t wend = std::min(ranges.size(), r + static_cast<size_t>(window_));
        std::vector<std::future<std::vector<EmbeddingVector>>> futures;
        for (size_t i = r; i < wend; ++i) {
            futures.push_back(std::async(std::launch::async, [&, i] {
                return post_embed_batch(base_url_, batch, ranges[i].first, ranges[i].second,
                                        max_retries_);
            }));
        }
        for (size_t i = r; i < wend; ++i) {
            auto vecs = futures[i - r].get();
            for (size_t j = 0; j < vecs.size(); ++j)
                out[ranges[i].first + j] = std::move(vecs[j]);
        }
    }
    return out;
}

std::unique_ptr<Embedder> make_embedder(const std::string& spec) {
    if (spec.empty() || spec == "hash") return std::make_unique<HashEmbedder>();
    return std::make_unique<RemoteEmbedder>(spec);
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim()) throw ContractError("cosine: dimension mismatch");
    double dot = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) dot += a.values[i] * b.values[i];
    if (dot > 1.0) dot = 1.0;
    if (dot < -1.0) dot = -1.0;
    return dot;
}

}  // namespace arcane
