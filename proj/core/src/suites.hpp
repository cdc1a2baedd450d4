#pragma once

#include <functional>
#include <vector>

#include "dlp/harness.hpp"

namespace dlp::detail {

using SuiteFn = std::function<std::vector<CaseResult>(const SuiteConfig&)>;

struct RegisteredSuite {
  SuiteInfo info;
  SuiteFn run;
};

const std::vector<RegisteredSuite>& registry();

}  // namespace dlp::detail
