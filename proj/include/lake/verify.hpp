#pragma once
#include <string>

namespace lake {

// Frozen-constant invariant battery. Writes <out_dir>/verify_report.csv (one
// row per check) and a reference field snapshot; all artifacts byte-stable
// across reruns. Returns the number of failed checks.
int run_verify(const std::string& out_dir);

}  // namespace lake
