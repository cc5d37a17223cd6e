#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cubehom::cli
{
    namespace exit_code
    {
        constexpr int ok = 0;
        constexpr int input_error = 1;
        constexpr int violated = 2;
        constexpr int budget = 3;
    }

    /// Runs one command line (without the program name). Reports go to `out`
    /// unless --out redirects them; diagnostics go to `err`.
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}
