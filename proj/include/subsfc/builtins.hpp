#pragma once

// Shipped substitution documents. Copies live in data/ for use with the
// command-line tool; regenerate with tools/embed_builtins.py.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "subsfc/io.hpp"

namespace subsfc {

namespace builtin_text {

inline constexpr std::string_view fib2d = R"json({
  "name": "fib2d",
  "lambda": "phi",
  "prototiles": [
    {"id": "a", "label": "a", "vertices": [[0, 0], ["phi", 0], ["phi", "phi"], [0, "phi"]]},
    {"id": "b", "label": "b", "vertices": [[0, 0], ["phi", 0], ["phi", 1], [0, 1]]},
    {"id": "c", "label": "c", "vertices": [[0, 0], [1, 0], [1, "phi"], [0, "phi"]]},
    {"id": "d", "label": "d", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}
  ],
  "children": {
    "a": [
      {"proto": "a", "offset": [0, 0]},
      {"proto": "b", "offset": [0, "phi"]},
      {"proto": "c", "offset": ["phi", 0]},
      {"proto": "d", "offset": ["phi", "phi"]}
    ],
    "b": [
      {"proto": "a", "offset": [0, 0]},
      {"proto": "c", "offset": ["phi", 0]}
    ],
    "c": [
      {"proto": "a", "offset": [0, 0]},
      {"proto": "b", "offset": [0, "phi"]}
    ],
    "d": [
      {"proto": "a", "offset": [0, 0]}
    ]
  },
  "order": {
    "a": [1, 2, 3, 4],
    "b": [1, 2],
    "c": [1, 2],
    "d": [1]
  }
}
)json";

inline constexpr std::string_view thue_morse_2d = R"json({
  "name": "thue_morse_2d",
  "lambda": 2,
  "prototiles": [
    {"id": "A", "label": "A", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]},
    {"id": "B", "label": "B", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}
  ],
  "children": {
    "A": [
      {"proto": "A", "offset": [0, 0]},
      {"proto": "B", "offset": [0, 1]},
      {"proto": "B", "offset": [1, 0]},
      {"proto": "A", "offset": [1, 1]}
    ],
    "B": [
      {"proto": "B", "offset": [0, 0]},
      {"proto": "A", "offset": [0, 1]},
      {"proto": "A", "offset": [1, 0]},
      {"proto": "B", "offset": [1, 1]}
    ]
  },
  "order_variants": {
    "lebesgue": {"A": [1, 2, 3, 4], "B": [1, 2, 3, 4]},
    "tm": {"A": [1, 2, 3, 4], "B": [1, 3, 2, 4]}
  },
  "order_variant": "lebesgue"
}
)json";

inline constexpr std::string_view equithirds_variant = R"json({
  "name": "equithirds_variant",
  "lambda": "sqrt3",
  "rotations": {"angles": [0, 30, 60, 90, 120, 150, 180, 210, 240, 270, 300, 330]},
  "prototiles": [
    {"id": "A+", "label": "A+", "vertices": [[0, 0], ["sqrt3", 0], ["sqrt3/2", "1/2"]]},
    {"id": "A-", "label": "A-", "vertices": [[0, 0], ["sqrt3", 0], ["sqrt3/2", "1/2"]]},
    {"id": "B+", "label": "B+", "vertices": [[0, 0], [1, 0], ["1/2", "sqrt3/2"]]},
    {"id": "B-", "label": "B-", "vertices": [[0, 0], [1, 0], ["1/2", "sqrt3/2"]]}
  ],
  "children": {
    "A+": [
      {"proto": "A-@210", "offset": ["3/2", "sqrt3/2"]},
      {"proto": "B+", "offset": [1, 0]},
      {"proto": "A-@150", "offset": [3, 0]}
    ],
    "A-": [
      {"proto": "A+@210", "offset": ["3/2", "sqrt3/2"]},
      {"proto": "B-", "offset": [1, 0]},
      {"proto": "A+@150", "offset": [3, 0]}
    ],
    "B+": [
      {"proto": "A+@240", "offset": ["sqrt3/2", "3/2"]},
      {"proto": "A+", "offset": [0, 0]},
      {"proto": "A+@120", "offset": ["sqrt3", 0]}
    ],
    "B-": [
      {"proto": "A-@240", "offset": ["sqrt3/2", "3/2"]},
      {"proto": "A-", "offset": [0, 0]},
      {"proto": "A-@120", "offset": ["sqrt3", 0]}
    ]
  },
  "order": {
    "A+": [1, 2, 3],
    "A-": [3, 2, 1],
    "B+": [1, 2, 3],
    "B-": [3, 2, 1]
  },
  "seeds": {
    "pair": [
      {"proto": "A+", "offset": [0, 0]},
      {"proto": "A+@180", "offset": ["sqrt3", 0]}
    ],
    "b": [
      {"proto": "B+", "offset": [0, 0]}
    ]
  }
}
)json";

}  // namespace builtin_text

inline const std::map<std::string, std::string_view>& builtin_documents() {
  static const std::map<std::string, std::string_view> docs{
      {"fib2d", builtin_text::fib2d},
      {"thue_morse_2d", builtin_text::thue_morse_2d},
      {"equithirds_variant", builtin_text::equithirds_variant},
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
