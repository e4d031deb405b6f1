#ifndef KOSZULRES_H
#define KOSZULRES_H

/*
 * koszulres — Koszul homology algebra and truncated minimal free resolutions
 * of the residue field for standard-graded quotient rings, in exact
 * arithmetic.
 *
 * The library is driven through an opaque session handle built from a ring
 * definition (file or string). Commands return malloc'd report strings (text
 * or JSON) that must be released with kres_string_free. All functions return
 * a status code; on failure *errmsg (when non-NULL) receives a malloc'd
 * message, also released with kres_string_free.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kres_status {
    KRES_OK = 0,
    KRES_ERR_INPUT = 1,    /* malformed or invalid input */
    KRES_ERR_VERIFY = 2,   /* a runtime verification failed */
    KRES_ERR_CUTOFF = 3,   /* the computation needs a larger cutoff */
    KRES_ERR_USAGE = 4,    /* invalid arguments to the API itself */
    KRES_ERR_INTERNAL = 5  /* engine invariant violated; report a bug */
} kres_status;

typedef struct kres_session kres_session;

typedef struct kres_options {
    int cutoff;        /* > 0 overrides the definition file */
    int max_hdeg;      /* > 0 caps the reported homology table (default 4) */
    const char* field; /* "QQ" or "GF(p)"; NULL keeps the file's field */
} kres_options;

/* Fills an options struct with the defaults (no overrides). */
void kres_options_init(kres_options* opt);

kres_status kres_session_open_file(const char* path, const kres_options* opt,
                                   kres_session** out, char** errmsg);
kres_status kres_session_open_string(const char* text, const kres_options* opt,
                                     kres_session** out, char** errmsg);
void kres_session_close(kres_session* s);

/* Hilbert function table; exit contract: INPUT errors on malformed rings. */
kres_status kres_cmd_ring_check(kres_session* s, int as_json, char** report, char** errmsg);

/* Homology / product / Massey invariants and the closed-form numeric layer. */
kres_status kres_cmd_invariants(kres_session* s, int as_json, char** report, char** errmsg);

/*
 * Builds the truncated resolution; with verify != 0 also checks complex-ness,
 * exactness (degrees one through four plus the augmentation), and minimality.
 * inject_fault may name a seeded mutation (testing hook; NULL for none).
 * Returns KRES_ERR_VERIFY when a verification fails.
 */
kres_status kres_cmd_resolution(kres_session* s, int as_json, int verify,
                                const char* inject_fault, char** report, char** errmsg);

/* Constrained triple-Massey span in homological degree four. */
kres_status kres_cmd_massey(kres_session* s, int as_json, char** report, char** errmsg);

/* Independent syzygy-oracle Betti numbers beta_0..beta_N (artinian only). */
kres_status kres_cmd_oracle_betti(kres_session* s, int as_json, int max_degree, char** report,
                                  char** errmsg);

void kres_string_free(char* s);
const char* kres_version(void);
int kres_abi_version(void);

#ifdef __cplusplus
}
#endif

#endif /* KOSZULRES_H */
