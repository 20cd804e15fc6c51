#pragma once

#include "cf/serialize.hpp"

#include <iosfwd>

namespace cf {

// A validated unit of CLI work. parse_spec fills defaults (depth 200,
// digits 50, tol "1e-30", format "json", jobs 1) and rejects unknown or
// ill-typed fields with a JSON-pointer path in the message.
struct JobSpec {
    std::string action;     // eval | contract | extend | certify | verify | sweep
    Json source;            // eval/contract/extend/certify (worpitzky, wall-empirical)
    std::string id;         // verify/sweep: identity id or "entry13_footnote"
    Json params;            // verify: catalog params; sweep: arrays mark grid axes
    std::string kind;       // contract: even | odd
    std::string scheme;     // extend: cor1 | cor2 | cor3 | cor7
    Json a_seq, c_seq;      // extend cor3/cor7 sequence specs; certify lange c_seq
    std::string b1;         // extend cor3
    std::string criterion;  // certify: worpitzky | lange | wall-empirical
    std::string alpha, rho_sq;  // certify lange
    std::int64_t depth = 200;
    int digits = 50;
    std::string tol = "1e-30";
    std::string format = "json";  // json | csv | table (csv/table: verify and sweep)
    int jobs = 1;                 // sweep parallelism; output stays in grid order
    bool header = true;           // echo the resolved spec before the records

    Json resolved() const;  // defaults filled; excludes the header switch
};

JobSpec parse_spec(const Json& j);

// Executes the job, streaming records to out and diagnostics to err.
// Returns 0 on success/pass, 1 on a failed verdict or refused certificate,
// 2 on input errors (also used for errors thrown mid-run).
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

}  // namespace cf
