#pragma once

#include <string_view>

#include "bincube/report.hpp"

inline const bincube::Check* find_check(const bincube::Report& r, std::string_view id) {
  for (const auto& c : r.checks)
    if (c.id == id) return &c;
  return nullptr;
}

inline bool check_passed(const bincube::Report& r, std::string_view id) {
  const auto* c = find_check(r, id);
  return c != nullptr && c->passed;
}
