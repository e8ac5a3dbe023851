#include "zcc/polynomial.hpp"

namespace zcc {

std::vector<Complex> to_complex(const Polynomial& p) {
  std::vector<Complex> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.to_complex());
  return out;
}

Complex eval(const Polynomial& p, Complex z) {
  Complex acc{0.0, 0.0};
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + it->to_complex();
  return acc;
}

std::string to_string(const Polynomial& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k].is_zero()) continue;
    std::string coef = c[k].to_string();
    const bool compound = !c[k].is_real() && sgn(c[k].re()) != 0;
    if (compound) coef = "(" + coef + ")";
    std::string term;
    if (k == 0) {
      term = coef;
    } else {
      if (coef == "1")
        coef.clear();
      else if (coef == "-1")
        coef = "-";
      term = coef + var + (k > 1 ? "^" + std::to_string(k) : "");
    }
    if (!out.empty() && term.front() != '-') out += "+";
    out += term;
  }
  return out;
}

Polynomial parse_coefficients(std::span<const std::string> literals) {
  std::vector<GaussRational> coeffs;
  coeffs.reserve(literals.size());
  for (const auto& lit : literals) coeffs.push_back(GaussRational::parse(lit));
  return Polynomial(std::move(coeffs));
}

std::vector<std::string> coefficient_strings(const Polynomial& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coeffs()) out.push_back(c.to_string());
  return out;
}

}  // namespace zcc
