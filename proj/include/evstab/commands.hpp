#pragma once

#include <map>
#include <string>

namespace evstab {

// Outcome of one command. A run that produced a report (including refusals,
// which are ordinary outcomes) carries report_json + table and empty error;
// a failed run carries error only. exit_code follows the ErrorCode values:
// 0 ok, 2 refused, 3 resource cap, 4 bad input, 5 internal.
struct CommandResult {
  int exit_code = 0;
  std::string report_json;
  std::string table;
  std::string error;
};

// Commands: orbit, iterate, preimage-poly, factor, counts, tree, certify,
// bijectivity, stickelberger, settled, preset. Parameters arrive as string
// key/value pairs (keys without the leading "--").
CommandResult run_command(const std::string& command,
                          const std::map<std::string, std::string>& params);

} // namespace evstab
