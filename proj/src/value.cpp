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

#include "hardattn/value.hpp"

#include "hardattn/errors.hpp"

namespace hardattn {

Value Value::leaf(char symbol, std::size_t position, std::size_t length) {
  return Value(Data(Leaf{symbol, position, length}));
}

Value Value::integer(std::int64_t v) { return Value(Data(v)); }

Value Value::tuple(std::vector<Value> items) {
  return Value(Data(std::make_shared<const std::vector<Value>>(std::move(items))));
}

Value Value::vector(RationalVector coords) { return Value(Data(std::make_shared<const RationalVector>(std::move(coords))));
}

const Leaf& Value::as_leaf() const {
  if (auto* p = std::get_if<Leaf>(&data_)) return *p;
  throw InputError("value " + render() + " is not a symbol leaf");
}

std::int64_t Value::as_int() const {
  if (auto* p = std::get_if<std::int64_t>(&data_)) return *p;
  throw InputError("value " + render() + " is not an integer");
}

const std::vector<Value>& Value::as_tuple() const {
  if (auto* p = std::get_if<TuplePtr>(&data_)) return **p;
  throw InputError("value " + render() + " is not a tuple");
}

const RationalVector& Value::as_vector() const {
  if (auto* p = std::get_if<VectorPtr>(&data_)) return **p;
  throw InputError("value " + render() + " is not a rational vector");
}

const Value& Value::operator[](std::size_t i) const {
  const auto& items = as_tuple();
  if (i >= items.size()) throw InputError("tuple index " + std::to_string(i) + " out of range in " + render());
  return items[i];
}

std::string Value::render() const {
  std::string out;
  render_into(out);
  return out;
}

void Value::render_into(std::string& out) const {
  switch (kind()) {
    case Kind::Leaf: {
      const auto& l = std::get<Leaf>(data_);
      out += '(';
      out += l.symbol;
      out += ',' + std::to_string(l.position) + ',' + std::to_string(l.length) + ')';
      break;
    }
    case Kind::Int:
      out += std::to_string(std::get<std::int64_t>(data_));
      break;
    case Kind::Tuple: {
      out += '(';
      bool first = true;
      for (const auto& v : *std::get<TuplePtr>(data_)) {
        if (!first) out += ',';
        first = false;
        v.render_into(out);
      }
      out += ')';
      break;
    }
    case Kind::Vector: {
      out += '(';
      bool first = true;
      for (const auto& q : *std::get<VectorPtr>(data_)) {
        if (!first) out += ',';
        first = false;
        out += to_string(q);
      }
      out += ')';
      break;
    }
  }
}

std::strong_ordering Value::compare(const Value& a, const Value& b) {
  if (a.data_.index() != b.data_.index()) return a.data_.index() <=> b.data_.index();
  switch (a.kind()) {
    case Kind::Leaf: return std::get<Leaf>(a.data_) <=> std::get<Leaf>(b.data_);
    case Kind::Int: return std::get<std::int64_t>(a.data_) <=> std::get<std::int64_t>(b.data_);
    case Kind::Tuple: {
      const auto& x = *std::get<TuplePtr>(a.data_);
      const auto& y = *std::get<TuplePtr>(b.data_);
      if (&x == &y) return std::strong_ordering::equal;
      for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (auto c = compare(x[i], y[i]); c != 0) return c;
      }
      return x.size() <=> y.size();
    }
    case Kind::Vector: {
      const auto& x = *std::get<VectorPtr>(a.data_);
      const auto& y = *std::get<VectorPtr>(b.data_);
      for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        int c = cmp(x[i], y[i]);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
      }
      return x.size() <=> y.size();
    }
  }
  return std::strong_ordering::equal;
}

}  // namespace hardattn
