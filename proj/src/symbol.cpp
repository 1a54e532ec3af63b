#include "dham/symbol.hpp"

namespace dham {

std::string Symbol::name() const {
  std::string s;
  switch (base) {
    case Base::T: s = "t"; break;
    case Base::Q: s = "q"; break;
    case Base::P: s = "p"; break;
  }
  s.append(static_cast<std::size_t>(order), 'd');
  if (shift < 0) s += 'm';
  if (shift > 0) s += 'p';
  return s;
}

std::optional<Symbol> symbol_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    const Symbol s = symbol_at(i);
    if (s.name() == name) return s;
  }
  return std::nullopt;
}

}  // namespace dham
