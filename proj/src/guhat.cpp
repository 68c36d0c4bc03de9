// Copyright 2026 The hardattn Authors.
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

#include "hardattn/guhat.hpp"

#include <algorithm>

#include "hardattn/errors.hpp"

namespace hardattn::guhat {

void GuhatModel::validate() const {
  if (layers == 0 || heads == 0) throw InputError(name + ": a model needs K >= 1 and H >= 1");
  if (alphabet.empty()) throw InputError(name + ": empty alphabet");
  if (has_symbol(kEndMarker)) throw InputError(name + ": the end marker may not be an alphabet symbol");
  if (!input || !output) throw InputError(name + ": missing input or output function");
  if (attention.size() != layers || activation.size() != layers) {
    throw InputError(name + ": need one attention row and one activation per layer");
  }
  for (std::size_t k = 0; k < layers; ++k) {
    if (attention[k].size() != heads) throw InputError(name + ": layer " + std::to_string(k + 1) + " head count");
    for (const auto& f : attention[k]) {
      if (!f) throw InputError(name + ": missing attention function");
    }
    if (!activation[k]) throw InputError(name + ": missing activation function");
  }
}

bool GuhatModel::has_symbol(char c) const {
  return std::find(alphabet.begin(), alphabet.end(), c) != alphabet.end();
}

std::string render_trace(const Trace& trace) {
  std::string out;
  for (const auto& layer : trace.values) {
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (i > 0) out += '\t';
      out += layer[i].render();
    }
    out += '\n';
  }
  out += "OUTPUT ";
  out += trace.output ? '1' : '0';
  out += '\n';
  return out;
}

std::size_t leftmost_argmax(std::span<const Rational> scores) {
  if (scores.empty()) throw InputError("argmax over an empty score row");
  std::size_t best = 0;
  for (std::size_t j = 1; j < scores.size(); ++j) {
    if (scores[j] > scores[best]) best = j;
  }
  return best;
}

std::vector<std::size_t> argmax_positions(std::span<const Rational> scores) {
  std::size_t best = leftmost_argmax(scores);
  std::vector<std::size_t> out;
  for (std::size_t j = best; j < scores.size(); ++j) {
    if (scores[j] == scores[best]) out.push_back(j);
  }
  return out;
}

Value uha_pool(std::span<const Value> values, std::span<const Rational> scores) {
  if (values.size() != scores.size()) throw InputError("uha_pool: values and scores differ in length");
  return values[leftmost_argmax(scores)];
}

RationalVector aha_pool(std::span<const RationalVector> values, std::span<const Rational> scores) {
  if (values.size() != scores.size()) throw InputError("aha_pool: values and scores differ in length");
  auto winners = argmax_positions(scores);
  const std::size_t dim = values[winners.front()].size();
  RationalVector sum(dim, Rational(0));
  for (std::size_t j : winners) {
    if (values[j].size() != dim) throw InputError("aha_pool: vectors of mixed dimension");
    for (std::size_t c = 0; c < dim; ++c) sum[c] += values[j][c];
  }
  const Rational count(static_cast<long>(winners.size()));
  for (auto& q : sum) q /= count;
  return sum;
}

Value aha_pool(std::span<const Value> values, std::span<const Rational> scores) {
  std::vector<RationalVector> vecs;
  vecs.reserve(values.size());
  for (const auto& v : values) vecs.push_back(v.as_vector());
  return Value::vector(aha_pool(std::span<const RationalVector>(vecs), scores));
}

bool visible(MaskMode mode, std::size_t i, std::size_t j) {
  switch (mode) {
    case MaskMode::None: return true;
    case MaskMode::Future: return j <= i;
    case MaskMode::Past: return j >= i;
  }
  return true;
}

std::vector<std::pair<std::size_t, Rational>> apply_mask(MaskMode mode, std::size_t i,
                                                         std::span<const Rational> scores) {
  if (i == 0 || i > scores.size()) throw InputError("apply_mask: query position out of range");
  std::vector<std::pair<std::size_t, Rational>> out;
  for (std::size_t j = 1; j <= scores.size(); ++j) {
    if (visible(mode, i, j)) out.emplace_back(j, scores[j - 1]);
  }
  return out;
}

namespace {

std::string context(std::size_t layer, std::size_t position) {
  return "layer " + std::to_string(layer) + ", position " + std::to_string(position);
}

template <typename F>
auto guarded(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ModelError&) {
    throw;
  } catch (const std::exception& e) {
    throw ModelError(where + ": " + e.what());
  }
}

void check_input(const GuhatModel& model, std::string_view x) {
  for (char c : x) {
    if (c == kEndMarker) throw InputError("input must not contain the end marker; it is appended automatically");
    if (!model.has_symbol(c)) throw InputError(std::string("symbol '") + c + "' is not in the alphabet of " + model.name);
  }
}

bool execute(const GuhatModel& model, std::string_view x, Pooling pooling, Trace* trace) {
  check_input(model, x);
  const std::size_t n = x.size() + 1;
  const std::size_t H = model.heads;

  std::vector<Value> current(n);
  for (std::size_t i = 1; i <= n; ++i) {
    char sym = i < n ? x[i - 1] : kEndMarker;
    current[i - 1] = guarded(context(0, i), [&] { return model.input(sym, i, n); });
  }
  if (trace) {
    trace->input = std::string(x);
    trace->values.push_back(current);
  }

  std::vector<Rational> row(n);
  std::vector<Rational> visible_scores;
  std::vector<Value> visible_values;
  std::vector<std::vector<Value>> pooled(n, std::vector<Value>(H));

  for (std::size_t k = 1; k <= model.layers; ++k) {
    for (std::size_t h = 1; h <= H; ++h) {
      HeadTrace head_trace{k, h, {}, {}};
      const auto& att = model.attention[k - 1][h - 1];
      for (std::size_t i = 1; i <= n; ++i) {
        visible_scores.clear();
        visible_values.clear();
        std::vector<std::size_t> positions;
        for (std::size_t j = 1; j <= n; ++j) {
          bool vis = visible(model.mask, i, j);
          if (!vis && !trace) continue;
          row[j - 1] = guarded(context(k, i), [&] { return att(current[i - 1], current[j - 1]); });
          if (vis) {
            visible_scores.push_back(row[j - 1]);
            visible_values.push_back(current[j - 1]);
            positions.push_back(j);
          }
        }
        if (pooling == Pooling::Unique) {
          std::size_t best = leftmost_argmax(visible_scores);
          pooled[i - 1][h - 1] = visible_values[best];
          if (trace) head_trace.targets.push_back({positions[best]});
        } else {
          pooled[i - 1][h - 1] = guarded(context(k, i), [&] { return aha_pool(visible_values, visible_scores); });
          if (trace) {
            std::vector<std::size_t> winners;
            for (std::size_t w : argmax_positions(visible_scores)) winners.push_back(positions[w]);
            head_trace.targets.push_back(std::move(winners));
          }
        }
        if (trace) head_trace.scores.push_back(row);
      }
      if (trace) trace->heads.push_back(std::move(head_trace));
    }

    std::vector<Value> next(n);
    for (std::size_t i = 1; i <= n; ++i) {
      next[i - 1] = guarded(context(k, i), [&] {
        return model.activation[k - 1](current[i - 1], std::span<const Value>(pooled[i - 1]));
      });
    }
    current = std::move(next);
    if (trace) trace->values.push_back(current);
  }

  bool out = guarded("output", [&] { return model.output(current[n - 1]); });
  if (trace) trace->output = out;
  return out;
}

}  // namespace

RunResult run(const GuhatModel& model, std::string_view x, Pooling pooling) {
  RunResult result;
  result.accepted = execute(model, x, pooling, &result.trace);
  return result;
}

bool accepts(const GuhatModel& model, std::string_view x, Pooling pooling) {
  return execute(model, x, pooling, nullptr);
}

}  // namespace hardattn::guhat
