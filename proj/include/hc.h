/* C interface to the horizontal proof compression library.
 *
 * All structural data crosses the boundary as JSON strings; handles are
 * opaque.  Functions returning a pointer yield NULL on failure, functions
 * returning int yield HC_OK on success; hc_last_error() describes the most
 * recent failure on the calling thread.  Strings returned by the library
 * must be released with hc_string_free().
 */
#ifndef HC_H
#define HC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hc_proof hc_proof;  /* tree-like derivation + foundation */
typedef struct hc_dlds hc_dlds;    /* dag-like derivability structure */

enum {
  HC_OK = 0,
  HC_ERR_INVALID = 1, /* domain failure: invalid proof / DLDS */
  HC_ERR_USAGE = 2    /* malformed input, bad arguments */
};

const char* hc_version(void);
const char* hc_last_error(void);
void hc_string_free(char* s);
void hc_proof_free(hc_proof* p);
void hc_dlds_free(hc_dlds* d);

/* ---- proofs ---- */
hc_proof* hc_proof_from_json(const char* json_text);
char* hc_proof_to_json(const hc_proof* p);
/* report of violated tree-derivation conditions; "[]" when valid */
int hc_proof_validate(const hc_proof* p, char** report_json);

hc_proof* hc_gen_fibonacci(int n);
/* digraph json: {"n":3,"edges":[[1,3],[1,2]]} */
hc_proof* hc_gen_nonhamiltonian(const char* digraph_json);

/* ---- pipeline ---- */
/* greedify + decorate + trivial dag; no compression */
hc_dlds* hc_proof_to_dlds(const hc_proof* p);
/* full pipeline; with mue_only only the first pass runs; trace_jsonl
 * (optional) receives one JSON line per rule application */
hc_dlds* hc_proof_compress(const hc_proof* p, int mue_only,
                           char** trace_jsonl);

hc_dlds* hc_dlds_from_json(const char* json_text);
char* hc_dlds_to_json(const hc_dlds* d);

/* per-condition validity report; returns HC_OK also when conditions fail
 * (consult the report), non-zero only on hard errors */
int hc_dlds_check_validity(const hc_dlds* d, int* valid, char** report_json);

/* grounds (when valid) and runs the polynomial verifier against the
 * comma-separated assumption list; *valid is 1/0, diagnostics explain
 * rejections */
int hc_dlds_verify(const hc_dlds* d, const char* delta_csv, int* valid,
                   char** diagnostics_json);

/* size metric, height, foundation size, h*m^4 bound */
char* hc_dlds_stats_json(const hc_dlds* d);
char* hc_dlds_to_dot(const hc_dlds* d);

/* ---- benchmarking ---- */
/* family: "fib" or "nonham"; returns the CSV table */
char* hc_bench_csv(const char* family, int from, int to);

#ifdef __cplusplus
}
#endif

#endif /* HC_H */
