#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace dham {

enum class Base { T, Q, P };

/// Coordinate of the delay jet space: t, q or p at shift -1/0/+1, with
/// derivative order 0..2 (time carries order 0 only).
struct Symbol {
  Base base = Base::Q;
  int shift = 0;
  int order = 0;

  constexpr bool valid() const {
    return shift >= -1 && shift <= 1 && order >= 0 && order <= 2 &&
           (base != Base::T || order == 0);
  }

  /// Dense index in [0, kSymbolCount).
  constexpr std::size_t index() const {
    if (base == Base::T) return static_cast<std::size_t>(shift + 1);
    const std::size_t off = base == Base::Q ? 3 : 12;
    return off + static_cast<std::size_t>((shift + 1) * 3 + order);
  }

  constexpr Symbol shifted(int by) const { return Symbol{base, shift + by, order}; }
  constexpr Symbol differentiated() const { return Symbol{base, shift, order + 1}; }

  std::string name() const;

  friend constexpr bool operator==(const Symbol&, const Symbol&) = default;
};

inline constexpr std::size_t kSymbolCount = 21;

constexpr Symbol symbol_at(std::size_t index) {
  if (index < 3) return Symbol{Base::T, static_cast<int>(index) - 1, 0};
  const Base b = index < 12 ? Base::Q : Base::P;
  const std::size_t k = index - (index < 12 ? 3 : 12);
  return Symbol{b, static_cast<int>(k / 3) - 1, static_cast<int>(k % 3)};
}

/// Looks up a vocabulary name such as "qdm" or "pp". `tau` is not a symbol.
std::optional<Symbol> symbol_from_name(std::string_view name);

namespace sym {
inline constexpr Symbol t{Base::T, 0, 0};
inline constexpr Symbol tm{Base::T, -1, 0};
inline constexpr Symbol tp{Base::T, 1, 0};
inline constexpr Symbol q{Base::Q, 0, 0};
inline constexpr Symbol qm{Base::Q, -1, 0};
inline constexpr Symbol qp{Base::Q, 1, 0};
inline constexpr Symbol p{Base::P, 0, 0};
inline constexpr Symbol pm{Base::P, -1, 0};
inline constexpr Symbol pp{Base::P, 1, 0};
inline constexpr Symbol qd{Base::Q, 0, 1};
inline constexpr Symbol qdm{Base::Q, -1, 1};
inline constexpr Symbol qdp{Base::Q, 1, 1};
inline constexpr Symbol pd{Base::P, 0, 1};
inline constexpr Symbol pdm{Base::P, -1, 1};
inline constexpr Symbol pdp{Base::P, 1, 1};
inline constexpr Symbol qdd{Base::Q, 0, 2};
inline constexpr Symbol qddm{Base::Q, -1, 2};
inline constexpr Symbol qddp{Base::Q, 1, 2};
inline constexpr Symbol pdd{Base::P, 0, 2};
inline constexpr Symbol pddm{Base::P, -1, 2};
inline constexpr Symbol pddp{Base::P, 1, 2};
}  // namespace sym

}  // namespace dham
