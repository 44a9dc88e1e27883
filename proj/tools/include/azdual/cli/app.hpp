#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace azd::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kDomain = 1;  // bad input, failed check, failed validation
inline constexpr int kUsage = 2;

// Environment variable holding the default --seed of check and dataset.
inline constexpr const char* kSeedEnv = "AZDUAL_SEED";

// Full command line dispatch; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace azd::cli
