// Command-line front end. Talks to the engine exclusively through the C API
// of libkoszulres.
//
// Exit codes: 0 success, 1 input error, 2 verification failure.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "koszulres/koszulres.h"

namespace {

struct CommonArgs {
    std::string file;
    bool as_json = false;
    int cutoff = 0;
    int max_hdeg = 0;
    std::string field;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("file", args.file, "ring definition file")->required();
    cmd->add_flag("--json", args.as_json, "emit the machine-readable JSON report");
    cmd->add_option("--cutoff", args.cutoff, "override the internal degree cutoff");
    cmd->add_option("--max-hdeg", args.max_hdeg,
                    "cap the homology table in reports (default 4)");
    cmd->add_option("--field", args.field, "override the coefficient field (QQ or GF(p))");
}

int finish(kres_status st, char* report, char* errmsg) {
    if (report) {
        std::fputs(report, stdout);
        kres_string_free(report);
    }
    if (errmsg) {
        std::fprintf(stderr, "error: %s\n", errmsg);
        kres_string_free(errmsg);
    }
    switch (st) {
        case KRES_OK:
            return 0;
        case KRES_ERR_VERIFY:
            return 2;
        default:
            return 1;
    }
}

kres_status open_session(const CommonArgs& args, kres_session** session, char** errmsg) {
    kres_options opt;
    kres_options_init(&opt);
    if (args.cutoff > 0) opt.cutoff = args.cutoff;
    if (args.max_hdeg > 0) opt.max_hdeg = args.max_hdeg;
    if (!args.field.empty()) opt.field = args.field.c_str();
    return kres_session_open_file(args.file.c_str(), &opt, session, errmsg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Koszul homology algebra, truncated minimal free resolutions, and Golod "
                 "defect invariants for graded quotient rings (exact arithmetic)"};
    app.require_subcommand(1);

    CommonArgs ring_args, inv_args, res_args, massey_args, oracle_args;
    bool verify = false;
    std::string inject_fault;
    int max_degree = 5;

    CLI::App* ring_check = app.add_subcommand("ring-check", "parse the ring and print its "
                                                            "Hilbert function");
    add_common(ring_check, ring_args);

    CLI::App* invariants = app.add_subcommand(
        "invariants", "homology, product, and Massey invariants with the numeric layer");
    add_common(invariants, inv_args);

    CLI::App* resolution = app.add_subcommand(
        "resolution", "build the truncated resolution of the residue field");
    add_common(resolution, res_args);
    resolution->add_flag("--verify", verify,
                         "verify complex-ness, exactness, and minimality");
    resolution->add_option("--inject-fault", inject_fault,
                           "testing hook: apply a named single-block mutation")
        ->group("");  // hidden

    CLI::App* massey = app.add_subcommand("massey", "triple Massey span in degree four");
    add_common(massey, massey_args);

    CLI::App* oracle = app.add_subcommand("oracle-betti",
                                          "independent syzygy-oracle Betti numbers");
    add_common(oracle, oracle_args);
    oracle->add_option("--max-degree,-N", max_degree, "top homological degree (default 5)");

    CLI11_PARSE(app, argc, argv);

    const CommonArgs* args = nullptr;
    if (ring_check->parsed()) args = &ring_args;
    if (invariants->parsed()) args = &inv_args;
    if (resolution->parsed()) args = &res_args;
    if (massey->parsed()) args = &massey_args;
    if (oracle->parsed()) args = &oracle_args;

    kres_session* session = nullptr;
    char* errmsg = nullptr;
    kres_status st = open_session(*args, &session, &errmsg);
    if (st != KRES_OK) return finish(st, nullptr, errmsg);

    char* report = nullptr;
    if (ring_check->parsed()) {
        st = kres_cmd_ring_check(session, args->as_json, &report, &errmsg);
    } else if (invariants->parsed()) {
        st = kres_cmd_invariants(session, args->as_json, &report, &errmsg);
    } else if (resolution->parsed()) {
        st = kres_cmd_resolution(session, args->as_json, verify ? 1 : 0,
                                 inject_fault.empty() ? nullptr : inject_fault.c_str(),
                                 &report, &errmsg);
    } else if (massey->parsed()) {
        st = kres_cmd_massey(session, args->as_json, &report, &errmsg);
    } else {
        st = kres_cmd_oracle_betti(session, args->as_json, max_degree, &report, &errmsg);
    }
    int code = finish(st, report, errmsg);
    kres_session_close(session);
    return code;
}
