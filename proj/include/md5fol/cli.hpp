#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace md5fol {

/// Entry point shared by the md5fol binary and the tests. Returns the
/// process exit code: 0 success, 1 verification failure, 2 invalid input,
/// 3 I/O failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace md5fol
