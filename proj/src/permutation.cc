#include "sticky/permutation.h"

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>

#include "sticky/error.h"

namespace sticky {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[v]) {
      throw Error(ErrorCode::kInvalidArgument, "not a bijection");
    }
    seen[v] = true;
  }
}

Permutation Permutation::Identity(int n) {
  std::vector<int> images(n);
  for (int i = 0; i < n; ++i) images[i] = i;
  return Permutation(std::move(images));
}

Permutation Permutation::FromCycles(int n,
                                    const std::vector<std::vector<int>>& cycles) {
  std::vector<int> images(n);
  for (int i = 0; i < n; ++i) images[i] = i;
  std::vector<bool> used(n, false);
  for (const auto& cycle : cycles) {
    for (size_t k = 0; k < cycle.size(); ++k) {
      const int from = cycle[k];
      if (from < 0 || from >= n || used[from]) {
        throw Error(ErrorCode::kInvalidArgument,
                    "cycle label out of range or repeated");
      }
      used[from] = true;
      images[from] = cycle[(k + 1) % cycle.size()];
    }
  }
  return Permutation(std::move(images));
}

bool Permutation::IsIdentity() const {
  for (int i = 0; i < size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::Inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i) inv[images_[i]] = i;
  Permutation result;
  result.images_ = std::move(inv);
  return result;
}

Permutation Permutation::Compose(const Permutation& other) const {
  if (other.size() != size()) {
    throw Error(ErrorCode::kInvalidArgument, "permutation sizes differ");
  }
  std::vector<int> out(images_.size());
  for (int i = 0; i < size(); ++i) out[i] = images_[other.images_[i]];
  Permutation result;
  result.images_ = std::move(out);
  return result;
}

std::vector<std::vector<int>> Permutation::Cycles() const {
  std::vector<std::vector<int>> cycles;
  std::vector<bool> seen(images_.size(), false);
  for (int start = 0; start < size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    std::vector<int> cycle;
    for (int v = start; !seen[v]; v = images_[v]) {
      seen[v] = true;
      cycle.push_back(v);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

std::string ToCycleString(const Permutation& perm) {
  if (perm.IsIdentity()) return "E";
  const bool spaced = perm.size() > 9;
  std::string out;
  for (const auto& cycle : perm.Cycles()) {
    out += '(';
    for (size_t k = 0; k < cycle.size(); ++k) {
      if (spaced && k > 0) out += ' ';
      out += std::to_string(cycle[k] + 1);
    }
    out += ')';
  }
  return out;
}

std::string ToCycleString(const PiOperation& op) {
  std::string out = ToCycleString(op.perm);
  if (op.sign < 0) out += '*';
  return out;
}

namespace {

[[noreturn]] void ParseFailure(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::kInvalidArgument,
              "cannot parse PI operation '" + std::string(text) + "': " + why);
}

}  // namespace

PiOperation ParsePiOperation(std::string_view text, int n) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) || !s.empty()) s += c;
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.pop_back();
  }
  int sign = 1;
  if (!s.empty() && s.back() == '*') {
    sign = -1;
    s.pop_back();
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
      s.pop_back();
    }
  }
  if (s.empty()) ParseFailure(text, "empty");
  if (s == "E" || s == "e" || s == "()") {
    return {Permutation::Identity(n), sign};
  }

  std::vector<std::vector<int>> cycles;
  size_t pos = 0;
  while (pos < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
      continue;
    }
    if (s[pos] != '(') ParseFailure(text, "expected '('");
    const size_t close = s.find(')', pos);
    if (close == std::string::npos) ParseFailure(text, "unbalanced '('");
    const std::string body = s.substr(pos + 1, close - pos - 1);
    const bool separated =
        body.find_first_of(" ,\t") != std::string::npos;
    std::vector<int> cycle;
    if (separated) {
      std::string token;
      auto flush = [&]() {
        if (token.empty()) return;
        cycle.push_back(std::stoi(token) - 1);
        token.clear();
      };
      for (char c : body) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
          token += c;
        } else if (c == ' ' || c == ',' || c == '\t') {
          flush();
        } else {
          ParseFailure(text, "unexpected character in cycle");
        }
      }
      flush();
    } else {
      for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          ParseFailure(text, "unexpected character in cycle");
        }
        cycle.push_back(c - '1');
      }
    }
    for (int v : cycle) {
      if (v < 0 || v >= n) ParseFailure(text, "label out of range");
    }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    pos = close + 1;
  }
  try {
    return {Permutation::FromCycles(n, cycles), sign};
  } catch (const Error&) {
    ParseFailure(text, "labels repeat across cycles");
  }
}

std::size_t PermutationHash::operator()(const Permutation& p) const {
  std::size_t h = 1469598103934665603ull;
  for (int v : p.images()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace sticky
