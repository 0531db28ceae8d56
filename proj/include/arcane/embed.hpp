/* embed.hpp -- natural-language rendering and pluggable sentence embedding
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "arcane/assertion.hpp"

namespace arcane {

struct NlSentence {
    std::string text;
    std::string source_id;
};

struct EmbeddingVector {
    std::vector<double> values;

    int dim() const { return static_cast<int>(values.size()); }
};

/// Template rendering of an assertion as one english sentence. Deterministic
/// function of the normalized AST; the clock, when present, is prefixed so
/// different clocks never collide.
NlSentence render_nl(const Assertion& a);

class Embedder {
public:
    virtual ~Embedder() = default;
    /// One unit-L2-norm vector per sentence; throws EmbedError on failure,
    /// ContractError on an empty batch.
    virtual std::vector<EmbeddingVector> embed(const std::vector<NlSentence>& batch) = 0;
};

/// Deterministic feature-hashing embedder: whitespace/punctuation tokens,
/// unigrams and bigrams hashed into `dim` buckets with +-1 signs, then
/// L2-normalized. Stable across runs and platforms.
class HashEmbedder : public Embedder {
public:
    explicit HashEmbedder(int dim = 256) : dim_(dim) {}
    std::vector<EmbeddingVector> embed(const std::vector<NlSentence>& batch) override;

private:
    int dim_;
};

/// Client for the remote embedding service (POST /embed, {"texts": [...]"}).
/// Batches of at most 64 sentences, a bounded window of concurrent requests,
/// bounded retries; any residual failure is a hard error that names the
/// retry count.
class RemoteEmbedder : public Embedder {
public:
    explicit RemoteEmbedder(std::string base_url, int batch_size = 64, int max_retries = 3,
                            int window = 4);
    std::vector<EmbeddingVector> embed(const std::vector<NlSentence>& batch) override;

private:
    std::string base_url_;
    int batch_size_;
    int max_retries_;
    int window_;
};

std::unique_ptr<Embedder> make_embedder(const std::string& spec);

/// Dot product of unit vectors, in [-1, 1]. Throws ContractError on
/// dimension mismatch. Fusion clamps to [0, 1] downstream.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

}  // namespace arcane
