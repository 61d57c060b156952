// Copyright 2026 The zenogate Authors
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

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zenogate {

/// Four levels per qudit, with a stable integer encoding. |f> and |s> are
/// storage levels; |g> <-> |e> exchanges excitations with the resonators and
/// the classical drive addresses |s> <-> |e> on the central qudit.
enum class QuditLevel : std::uint8_t { f = 0, s = 1, g = 2, e = 3 };

inline char to_char(QuditLevel l) {
  switch (l) {
    case QuditLevel::f: return 'f';
    case QuditLevel::s: return 's';
    case QuditLevel::g: return 'g';
    case QuditLevel::e: return 'e';
  }
  throw std::logic_error("invalid QuditLevel");
}

inline QuditLevel level_from_char(char c) {
  switch (c) {
    case 'f': return QuditLevel::f;
    case 's': return QuditLevel::s;
    case 'g': return QuditLevel::g;
    case 'e': return QuditLevel::e;
    default: throw std::invalid_argument(std::string("unknown level '") + c + "'");
  }
}

/// Geometry of the system: N qudits (data qudits 1..N-1 plus the central
/// qudit A) and N-1 resonator modes, one per data qudit. Photon occupation
/// is truncated at n_max per mode. With one initial excitation the dynamics
/// conserve excitation number, so n_max = 1 is exact; larger values exist
/// for truncation-independence checks.
struct SystemLayout {
  int n_qubits;
  int n_max;

  explicit SystemLayout(int n_qubits_, int n_max_ = 1)
      : n_qubits(n_qubits_), n_max(n_max_) {
    if (n_qubits < 2) throw std::invalid_argument("SystemLayout: need n_qubits >= 2");
    if (n_max < 1) throw std::invalid_argument("SystemLayout: need n_max >= 1");
  }

  int n_modes() const { return n_qubits - 1; }
  int central_site() const { return n_qubits - 1; }

  bool operator==(const SystemLayout&) const = default;
};

/// One product configuration: a level for every qudit (data qudits first,
/// central qudit last) and a photon count for every resonator mode.
class BasisState {
 public:
  BasisState(std::vector<QuditLevel> levels, std::vector<int> photons)
      : levels_(std::move(levels)), photons_(std::move(photons)) {
    for (int n : photons_) {
      if (n < 0) throw std::invalid_argument("BasisState: negative photon count");
    }
  }

  /// Parses labels of the shape "f1 g2 sA | 0 0" (and, leniently, compact
  /// forms like "fgs" for level patterns with vacuum modes given n_modes).
  static BasisState parse(const std::string& label, const SystemLayout& layout);

  /// All data-qudit levels given as one pattern string, vacuum modes.
  static BasisState vacuum(const SystemLayout& layout, const std::string& pattern) {
    if (static_cast<int>(pattern.size()) != layout.n_qubits)
      throw std::invalid_argument("BasisState::vacuum: pattern length != n_qubits");
    std::vector<QuditLevel> lv(pattern.size());
    for (std::size_t i = 0; i < pattern.size(); ++i) lv[i] = level_from_char(pattern[i]);
    return BasisState(std::move(lv), std::vector<int>(layout.n_modes(), 0));
  }

  const std::vector<QuditLevel>& levels() const { return levels_; }
  const std::vector<int>& photons() const { return photons_; }
  QuditLevel level(int site) const { return levels_.at(site); }
  int photon(int mode) const { return photons_.at(mode); }
  int total_photons() const {
    int n = 0;
    for (int p : photons_) n += p;
    return n;
  }

  bool valid_for(const SystemLayout& layout) const {
    if (static_cast<int>(levels_.size()) != layout.n_qubits) return false;
    if (static_cast<int>(photons_.size()) != layout.n_modes()) return false;
    for (int p : photons_)
      if (p > layout.n_max) return false;
    return true;
  }

  BasisState with_level(int site, QuditLevel l) const {
    BasisState s = *this;
    s.levels_.at(site) = l;
    return s;
  }
  BasisState with_photon(int mode, int n) const {
    BasisState s = *this;
    s.photons_.at(mode) = n;
    return s;
  }

  /// Serialized form used in CSV headers and logs: levels in site order with
  /// site tags (data qudits numbered from 1, the central qudit tagged A),
  /// a pipe, then the photon counts. Example: "f1 f2 sA | 0 0".
  std::string label() const {
    std::ostringstream os;
    const int n = static_cast<int>(levels_.size());
    for (int i = 0; i < n; ++i) {
      if (i) os << ' ';
      os << to_char(levels_[i]);
      if (i == n - 1)
        os << 'A';
      else
        os << (i + 1);
    }
    os << " |";
    for (int p : photons_) os << ' ' << p;
    return os.str();
  }

  friend bool operator==(const BasisState& a, const BasisState& b) = default;
  friend std::strong_ordering operator<=>(const BasisState& a, const BasisState& b) = default;

 private:
  std::vector<QuditLevel> levels_;
  std::vector<int> photons_;
};

/// Conserved excitation count: one per qudit in |e>, one if the central
/// qudit is in |s>, plus the total photon number. The counting convention is
/// not stated anywhere explicitly; it is fixed by which level patterns can
/// convert into each other under the interaction terms (see README).
inline int excitation_number(const BasisState& state) {
  int n = state.total_photons();
  const auto& lv = state.levels();
  for (QuditLevel l : lv)
    if (l == QuditLevel::e) ++n;
  if (!lv.empty() && lv.back() == QuditLevel::s) ++n;
  return n;
}

/// Ordered, indexed set of basis states. All operator matrices in this
/// library live on one of these. Immutable after construction.
class SubspaceBasis {
 public:
  SubspaceBasis(SystemLayout layout, std::vector<BasisState> states)
      : layout_(layout), states_(std::move(states)) {
    for (std::size_t k = 0; k < states_.size(); ++k) {
      if (!states_[k].valid_for(layout_))
        throw std::invalid_argument("SubspaceBasis: state '" + states_[k].label() +
                                    "' does not fit the layout");
      auto [it, inserted] = index_.emplace(states_[k], static_cast<int>(k));
      if (!inserted)
        throw std::invalid_argument("SubspaceBasis: duplicate state '" + states_[k].label() + "'");
    }
  }

  int size() const { return static_cast<int>(states_.size()); }
  const SystemLayout& layout() const { return layout_; }
  const BasisState& state(int i) const { return states_.at(i); }
  const std::vector<BasisState>& states() const { return states_; }

  std::optional<int> find(const BasisState& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  int index_of(const BasisState& s) const {
    auto i = find(s);
    if (!i) throw std::out_of_range("SubspaceBasis: state '" + s.label() + "' not in basis");
    return *i;
  }
  bool contains(const BasisState& s) const { return index_.count(s) != 0; }

  bool operator==(const SubspaceBasis& other) const {
    return layout_ == other.layout_ && states_ == other.states_;
  }

 private:
  SystemLayout layout_;
  std::vector<BasisState> states_;
  std::map<BasisState, int> index_;
};

using BasisPtr = std::shared_ptr<const SubspaceBasis>;

inline BasisState BasisState::parse(const std::string& label, const SystemLayout& layout) {
  // compact form: one char per qudit, vacuum modes
  if (label.find('|') == std::string::npos && label.find(' ') == std::string::npos)
    return vacuum(layout, label);
  std::vector<QuditLevel> lv;
  std::vector<int> ph;
  std::istringstream is(label);
  std::string tok;
  bool in_photons = false;
  while (is >> tok) {
    if (tok == "|") {
      in_photons = true;
      continue;
    }
    if (in_photons)
      ph.push_back(std::stoi(tok));
    else
      lv.push_back(level_from_char(tok.front()));
  }
  BasisState s(std::move(lv), std::move(ph));
  if (!s.valid_for(layout))
    throw std::invalid_argument("BasisState::parse: '" + label + "' does not fit the layout");
  return s;
}

}  // namespace zenogate
