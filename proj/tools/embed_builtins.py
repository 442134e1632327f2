#!/usr/bin/env python3
"""Regenerates include/subsfc/builtins.hpp from the documents in data/."""
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
NAMES = ["fib2d", "thue_morse_2d", "equithirds_variant"]

HEAD = """#pragma once

// Shipped substitution documents. Copies live in data/ for use with the
// command-line tool; regenerate with tools/embed_builtins.py.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "subsfc/io.hpp"

namespace subsfc {

namespace builtin_text {
"""

TAIL = """}  // namespace builtin_text

inline const std::map<std::string, std::string_view>& builtin_documents() {
  static const std::map<std::string, std::string_view> docs{
%s
  };
  return docs;
}

inline std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : builtin_documents()) out.push_back(name);
  return out;
}

/// `name` or `name#variant`, without the "builtin:" prefix.
inline LoadedSubstitution load_builtin(const std::string& spec, ParseOptions opts = {}) {
  std::string name = spec;
  if (const auto hash = spec.find('#'); hash != std::string::npos) {
    name = spec.substr(0, hash);
    if (opts.order_variant.empty()) opts.order_variant = spec.substr(hash + 1);
  }
  const auto& docs = builtin_documents();
  const auto it = docs.find(name);
  if (it == docs.end()) throw SchemaError("no builtin named '" + name + "'");
  return parse_substitution(it->second, opts);
}

}  // namespace subsfc
"""


def main():
    parts = [HEAD]
    for name in NAMES:
        text = (ROOT / "data" / f"{name}.json").read_text()
        parts.append(f'inline constexpr std::string_view {name} = R"json({text})json";\n')
    entries = "\n".join(f'      {{"{n}", builtin_text::{n}}},' for n in NAMES)
    parts.append(TAIL % entries)
    (ROOT / "include" / "subsfc" / "builtins.hpp").write_text("\n".join(parts))


if __name__ == "__main__":
    main()
