// eudoxus — exact real calculator over integer slope functions.
//
//   eudoxus eval "cf[1;(2)*] * cf[1;(2)*]" --digits 8
//   eudoxus sign "1/2 - 1/2"
//   eudoxus saturate 6,10
//   eudoxus                      (REPL)
//
// Exit codes: 0 success, 1 user error, 2 inconclusive verdict.

#include "eudoxus/eudoxus.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

int run_command(const eudoxus::Command& cmd, const eudoxus::Config& cfg) {
    try {
        eudoxus::Outcome oc = eudoxus::execute(cmd, cfg);
        std::cout << oc.out << "\n";
        return oc.code;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}

int repl(eudoxus::Config cfg) {
    std::string line;
    int last = 0;
    std::cout << "eudoxus calculator — commands: eval cf sign compare defect saturate crt padic"
                 " | fuel N | digits N | quit\n";
    for (;;) {
        std::cout << "eudoxus> " << std::flush;
        if (!std::getline(std::cin, line)) break;
        std::size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i == line.size()) continue;
        if (line == "quit" || line == "exit") break;
        // session knobs
        if (line.rfind("fuel ", 0) == 0) {
            try {
                cfg.fuel.max_doublings = static_cast<unsigned>(std::stoul(line.substr(5)));
                continue;
            } catch (...) {
                std::cerr << "error: bad fuel value\n";
                last = 1;
                continue;
            }
        }
        if (line.rfind("digits ", 0) == 0) {
            try {
                cfg.digits = static_cast<unsigned>(std::stoul(line.substr(7)));
                continue;
            } catch (...) {
                std::cerr << "error: bad digits value\n";
                last = 1;
                continue;
            }
        }
        try {
            last = run_command(eudoxus::parse_command(line), cfg);
        } catch (const std::exception& ex) {
            std::cerr << "error: " << ex.what() << "\n";
            last = 1;
        }
    }
    return last == 2 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact real arithmetic over integer slope functions"};
    app.require_subcommand(0, 1);

    eudoxus::Config cfg;
    unsigned fuel = cfg.fuel.max_doublings;
    app.add_option("--fuel", fuel, "sign-search budget in doublings")->capture_default_str();
    unsigned digits = cfg.digits;
    app.add_option("--digits", digits, "decimal digits for eval")->capture_default_str();

    std::string expr1, expr2, frac, partition, prime, precision;
    std::size_t terms = cfg.cf_terms;

    CLI::App* c_eval = app.add_subcommand("eval", "certified decimal value of an expression");
    c_eval->add_option("expr", expr1, "expression")->required();

    CLI::App* c_cf = app.add_subcommand("cf", "continued-fraction terms of an expression");
    c_cf->add_option("expr", expr1, "expression")->required();
    c_cf->add_option("--terms", terms, "number of terms")->capture_default_str();

    CLI::App* c_sign = app.add_subcommand("sign", "certified sign of an expression");
    c_sign->add_option("expr", expr1, "expression")->required();

    CLI::App* c_cmp = app.add_subcommand("compare", "certified sign of lhs - rhs");
    c_cmp->add_option("lhs", expr1, "left expression")->required();
    c_cmp->add_option("rhs", expr2, "right expression")->required();

    CLI::App* c_defect = app.add_subcommand("defect", "additivity defect bound of an expression");
    c_defect->add_option("expr", expr1, "expression")->required();

    CLI::App* c_sat = app.add_subcommand("saturate", "prime support of a multiplicative set");
    c_sat->add_option("generators", expr1, "comma-separated nonzero generators")->required();

    CLI::App* c_crt = app.add_subcommand("crt", "split a fraction mod 1 across two prime sets");
    c_crt->add_option("frac", frac, "fraction num/den")->required();
    c_crt->add_option("partition", partition, "left|right prime lists, e.g. 2|3")->required();

    CLI::App* c_padic = app.add_subcommand("padic", "p-adic digits of a rational action");
    c_padic->add_option("action", expr1, "multiplier a/b")->required();
    c_padic->add_option("p", prime, "prime")->required();
    c_padic->add_option("k", precision, "digit precision")->required();

    CLI11_PARSE(app, argc, argv);
    cfg.fuel.max_doublings = fuel;
    cfg.digits = digits;
    cfg.cf_terms = terms;

    eudoxus::Command cmd{};
    if (c_eval->parsed()) {
        cmd.kind = eudoxus::Command::Kind::Eval;
        cmd.arg1 = expr1;
    } else if (c_cf->parsed()) {
        cmd.kind = eudoxus::Command::Kind::Cf;
        cmd.arg1 = expr1;
    } else if (c_sign->parsed()) {
        cmd.kind = eudoxus::Command::Kind::Sign;
        cmd.arg1 = expr1;
    } else if (c_cmp->parsed()) {
        cmd.kind = eudoxus::Command::Kind::Compare;
        cmd.arg1 = expr1;
        cmd.arg2 = expr2;
    } else if (c_defect->parsed()) {
        cmd.kind = eudoxus::Command::Kind::Defect;
        cmd.arg1 = expr1;
    } else if (c_sat->parsed()) {
        cmd.kind = eudoxus::Command::Kind::Saturate;
        cmd.arg1 = expr1;
    } else if (c_crt->parsed()) {
        cmd.kind = eudoxus::Command::Kind::Crt;
        cmd.arg1 = frac;
        cmd.arg2 = partition;
    } else if (c_padic->parsed()) {
        cmd.kind = eudoxus::Command::Kind::Padic;
        cmd.arg1 = expr1;
        cmd.arg2 = prime;
        cmd.arg3 = precision;
    } else {
        return repl(cfg);
    }
    return run_command(cmd, cfg);
}
