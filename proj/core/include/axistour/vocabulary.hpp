#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "axistour/numeric.hpp"

namespace axistour {

/// Ordered, unique token list with its inverse index. When `lowercased` is
/// set, lookups fold the query to lower case before probing.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Returns false if the token is already present (nothing is added).
  bool add(const std::string& token) {
    auto [it, inserted] = index_.emplace(token, static_cast<Index>(words_.size()));
    if (inserted) words_.push_back(token);
    return inserted;
  }

  std::optional<Index> find(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end() && lowercased_) {
      it = index_.find(to_lower(token));
    }
    return it == index_.end() ? std::nullopt : std::optional<Index>(it->second);
  }

  bool contains(const std::string& token) const { return find(token).has_value(); }

  const std::string& word(Index i) const { return words_[static_cast<std::size_t>(i)]; }
  Index size() const { return static_cast<Index>(words_.size()); }
  const std::vector<std::string>& words() const { return words_; }

  bool lowercased() const { return lowercased_; }
  void set_lowercased(bool value) { lowercased_ = value; }

  static std::string to_lower(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
  }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, Index> index_;
  bool lowercased_ = false;
};

}  // namespace axistour
