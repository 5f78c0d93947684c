#include "jointlab/pipeline.hpp"

#include <cstdio>

namespace jointlab {

Check make_check(std::string name, const Rational& lhs, std::string rel, const Rational& rhs) {
  const int c = cmp(lhs, rhs);
  bool holds = false;
  if (rel == "<") holds = c < 0;
  else if (rel == "<=") holds = c <= 0;
  else if (rel == "=") holds = c == 0;
  else if (rel == ">=") holds = c >= 0;
  else if (rel == ">") holds = c > 0;
  return {std::move(name), lhs, std::move(rel), rhs, holds};
}

void TraceRecord::add(std::string key, const Rational& value) {
  add(std::move(key), to_fraction_string(value));
}

const Check* TraceRecord::find_check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const std::string* TraceRecord::find_field(const std::string& key) const {
  for (const auto& [k, v] : fields) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string serialize(const TraceRecord& r) {
  std::string out = r.step + "\tdepth=" + std::to_string(r.depth);
  for (const auto& [k, v] : r.fields) out += "\t" + k + "=" + v;
  for (const auto& c : r.checks) {
    out += "\tcheck." + c.name + "=" + to_fraction_string(c.lhs) + " " + c.rel + " " +
           to_fraction_string(c.rhs) + " " + (c.holds ? "holds" : "fails");
  }
  return out;
}

std::string serialize(const std::vector<TraceRecord>& trace) {
  std::string out;
  for (const auto& r : trace) out += serialize(r) + "\n";
  return out;
}

std::string poly_digest(const MultiPoly3& p) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : to_string(p)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  const int d = p.is_zero() ? -1 : p.degree();
  return "deg" + std::to_string(d) + ":terms" + std::to_string(p.term_count()) + ":" + hex;
}

}  // namespace jointlab
