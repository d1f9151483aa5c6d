#include <iostream>

#include "qfc/cli.hpp"

int main(int argc, char** argv)
{
    auto parsed = qfc::cli::parse_args(argc, argv);
    qfc::cli::CliResult res;
    if (auto* req = std::get_if<qfc::cli::CliRequest>(&parsed))
        res = qfc::cli::run(*req);
    else
        res = std::get<qfc::cli::CliResult>(parsed);
    std::cout << res.out;
    std::cerr << res.err;
    return res.exit_code;
}
