#pragma once

#include <string>
#include <vector>

namespace sc {

// One named check.  `ok` with a detail string doubles as an informational
// note; failures carry the localized witness in `detail`.
struct CheckItem {
  bool ok = true;
  std::string name;
  std::string detail;
};

struct Report {
  std::vector<CheckItem> items;

  void add(bool ok, std::string name, std::string detail = {}) {
    items.push_back({ok, std::move(name), std::move(detail)});
  }
  bool ok() const {
    for (const auto& it : items)
      if (!it.ok) return false;
    return true;
  }
  std::string text() const {
    std::string out;
    for (const auto& it : items) {
      out += it.ok ? "pass " : "FAIL ";
      out += it.name;
      if (!it.detail.empty()) {
        out += ": ";
        out += it.detail;
      }
      out += '\n';
    }
    return out;
  }
};

}  // namespace sc
