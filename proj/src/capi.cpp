#include "koszulres/koszulres.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "report.hpp"

using kres::Error;
using kres::ErrorKind;

struct kres_session {
    kres::report::Session impl;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_err(char** errmsg, const std::string& msg) {
    if (errmsg) *errmsg = dup_string(msg);
}

kres_status status_of(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Input:
            return KRES_ERR_INPUT;
        case ErrorKind::Cutoff:
            return KRES_ERR_CUTOFF;
        case ErrorKind::Verify:
            return KRES_ERR_VERIFY;
        case ErrorKind::Internal:
            return KRES_ERR_INTERNAL;
    }
    return KRES_ERR_INTERNAL;
}

template <typename F>
kres_status guarded(char** errmsg, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        set_err(errmsg, e.what());
        return status_of(e);
    } catch (const std::bad_alloc&) {
        set_err(errmsg, "out of memory");
        return KRES_ERR_INTERNAL;
    } catch (const std::exception& e) {
        set_err(errmsg, e.what());
        return KRES_ERR_INTERNAL;
    }
}

kres::ringdef::EngineOptions engine_options(const kres_options* opt) {
    kres::ringdef::EngineOptions out;
    if (!opt) return out;
    if (opt->cutoff > 0) out.cutoff = opt->cutoff;
    if (opt->max_hdeg > 0) out.max_hdeg = opt->max_hdeg;
    if (opt->field) out.field_override = std::string(opt->field);
    return out;
}

kres_status open_session(kres::ringdef::RingDefinition def, const kres_options* opt,
                         kres_session** out, char** errmsg) {
    if (!out) {
        set_err(errmsg, "output handle is null");
        return KRES_ERR_USAGE;
    }
    *out = new kres_session{kres::report::Session(std::move(def), engine_options(opt))};
    return KRES_OK;
}

kres_status deliver(const kres::report::Report& rep, int as_json, char** report) {
    if (report) *report = dup_string(rep.render(as_json != 0));
    return rep.exit_code == 2 ? KRES_ERR_VERIFY : KRES_OK;
}

}  // namespace

extern "C" {

void kres_options_init(kres_options* opt) {
    if (!opt) return;
    opt->cutoff = 0;
    opt->max_hdeg = 0;
    opt->field = nullptr;
}

kres_status kres_session_open_file(const char* path, const kres_options* opt,
                                   kres_session** out, char** errmsg) {
    if (!path) {
        set_err(errmsg, "path is null");
        return KRES_ERR_USAGE;
    }
    return guarded(errmsg, [&] {
        return open_session(kres::ringdef::load_ring_definition(path), opt, out, errmsg);
    });
}

kres_status kres_session_open_string(const char* text, const kres_options* opt,
                                     kres_session** out, char** errmsg) {
    if (!text) {
        set_err(errmsg, "text is null");
        return KRES_ERR_USAGE;
    }
    return guarded(errmsg, [&] {
        return open_session(kres::ringdef::parse_ring_definition(text), opt, out, errmsg);
    });
}

void kres_session_close(kres_session* s) { delete s; }

kres_status kres_cmd_ring_check(kres_session* s, int as_json, char** report, char** errmsg) {
    if (!s) {
        set_err(errmsg, "session is null");
        return KRES_ERR_USAGE;
    }
    return guarded(errmsg, [&] { return deliver(s->impl.ring_check(), as_json, report); });
}

kres_status kres_cmd_invariants(kres_session* s, int as_json, char** report, char** errmsg) {
    if (!s) {
        set_err(errmsg, "session is null");
        return KRES_ERR_USAGE;
    }
    return guarded(errmsg, [&] { return deliver(s->impl.invariants(), as_json, report); });
}

kres_status kres_cmd_resolution(kres_session* s, int as_json, int verify,
                                const char* inject_fault, char** report, char** errmsg) {
    if (!s) {
        set_err(errmsg, "session is null");
        return KRES_ERR_USAGE;
    }
    return guarded(errmsg, [&] {
        std::string fault = inject_fault ? inject_fault : "";
        return deliver(s->impl.resolution(verify != 0, fault), as_json, report);
    });
}

kres_status kres_cmd_massey(kres_session* s, int as_json, char** report, char** errmsg) {
    if (!s) {
        set_err(errmsg, "session is null");
        return KRES_ERR_USAGE;
    }
    return guarded(errmsg, [&] { return deliver(s->impl.massey(), as_json, report); });
}

kres_status kres_cmd_oracle_betti(kres_session* s, int as_json, int max_degree, char** report,
                                  char** errmsg) {
    if (!s) {
        set_err(errmsg, "session is null");
        return KRES_ERR_USAGE;
    }
    if (max_degree < 0) {
        set_err(errmsg, "max_degree must be non-negative");
        return KRES_ERR_USAGE;
    }
    return guarded(errmsg,
                   [&] { return deliver(s->impl.oracle_betti(max_degree), as_json, report); });
}

void kres_string_free(char* s) { std::free(s); }

const char* kres_version(void) { return "0.1.0"; }

int kres_abi_version(void) { return 1; }

}  // extern "C"
