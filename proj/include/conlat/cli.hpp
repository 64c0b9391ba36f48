#ifndef CONLAT_CLI_HPP
#define CONLAT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace conlat::cli {

// Exit statuses: 0 success, 1 bad input or usage, 2 verification failure
// (a lemma check failed, which indicates an implementation bug), 3 a
// resource bound was exceeded. Results go to `out`, messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conlat::cli

#endif
