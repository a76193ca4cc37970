#pragma once

#include <iosfwd>
#include <string>

#include "rmatch/model.hpp"

namespace rmatch {

// Instances are stored as JSON documents:
//
//   {
//     "f_max": 100.0,
//     "students": [{"id": "s1", "score": 90.0}, ...],
//     "colleges": [{"id": "c1", "quota": 1, "alpha": 0.5,
//                   "bonus": [[1, 100.0], [2, 90.0]]}, ...],
//     "prefs": {"s1": ["c1", "c2"], ...}
//   }
//
// A banded college carries "bands": [{"label": "A", "first": 1, "last": 3,
// "value": 100.0}, ...] in place of "bonus".

Instance parse_instance(const std::string& text);
std::string format_instance(const Instance& instance);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

/// One `student_id,college_id` line per student, `-` for unmatched.
void write_matching(std::ostream& os, const Instance& instance, const Matching& matching);
Matching read_matching(std::istream& is, const Instance& instance);

}  // namespace rmatch
