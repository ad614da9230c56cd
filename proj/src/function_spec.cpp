#include "fracineq/function_spec.hpp"

#include <charconv>
#include <cmath>
#include <utility>

namespace fracineq {

namespace {

double parse_number(std::string_view token, std::string_view context) {
  double value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  // from_chars rejects a leading '+', which users type.
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end || !std::isfinite(value)) {
    throw DomainError("bad number '" + std::string(token) + "' in function spec '" + std::string(context) + "'");
  }
  return value;
}

std::vector<double> parse_list(std::string_view body, std::string_view context) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    out.push_back(parse_number(body.substr(start, comma - start), context));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

FunctionSpec parse_function_spec(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("function spec '" + std::string(text) + "' needs the form kind:arguments");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  FunctionSpec spec;
  spec.text = std::string(text);
  if (kind == "const") {
    spec.kind = FunctionSpec::Kind::Const;
    spec.values = {parse_number(body, text)};
  } else if (kind == "pow") {
    spec.kind = FunctionSpec::Kind::Pow;
    const std::size_t star = body.find('*');
    const double sigma = parse_number(body.substr(0, star), text);
    const double coeff = star == std::string_view::npos ? 1.0 : parse_number(body.substr(star + 1), text);
    spec.values = {sigma, coeff};
  } else if (kind == "poly") {
    spec.kind = FunctionSpec::Kind::Poly;
    spec.values = parse_list(body, text);
  } else if (kind == "sin" || kind == "exp") {
    spec.kind = kind == "sin" ? FunctionSpec::Kind::Sin : FunctionSpec::Kind::Exp;
    spec.values = parse_list(body, text);
    if (spec.values.size() != 2) {
      throw DomainError("function spec '" + std::string(text) + "' takes exactly two coefficients a,b");
    }
  } else {
    throw DomainError("unknown function kind '" + std::string(kind) + "' (expected const, pow, poly, sin, exp)");
  }
  return spec;
}

Function FunctionSpec::function() const {
  const auto v = values;
  switch (kind) {
    case Kind::Const: return make_function<double>([c = v[0]](double) { return c; }, text);
    case Kind::Pow:
      return make_function<double>([s = v[0], c = v[1]](double t) { return c * std::pow(t, s); }, text);
    case Kind::Poly:
      return make_function<double>(
          [v](double t) {
            double acc = 0;
            for (auto it = v.rbegin(); it != v.rend(); ++it) acc = acc * t + *it;
            return acc;
          },
          text);
    case Kind::Sin:
      return make_function<double>([a = v[0], b = v[1]](double t) { return a + b * std::sin(t); }, text);
    case Kind::Exp:
      return make_function<double>([a = v[0], b = v[1]](double t) { return a + b * std::exp(t); }, text);
  }
  return {};
}

std::optional<std::vector<std::pair<double, double>>> FunctionSpec::monomials() const {
  switch (kind) {
    case Kind::Const: return std::vector<std::pair<double, double>>{{0.0, values[0]}};
    case Kind::Pow: return std::vector<std::pair<double, double>>{{values[0], values[1]}};
    case Kind::Poly: {
      std::vector<std::pair<double, double>> out;
      for (std::size_t k = 0; k < values.size(); ++k) out.emplace_back(static_cast<double>(k), values[k]);
      return out;
    }
    case Kind::Sin:
    case Kind::Exp: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace fracineq
