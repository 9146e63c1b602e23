#ifndef NBTRACE_H
#define NBTRACE_H

/* C interface to the nbtrace library: graphs with edge involutions,
 * Hashimoto traces, certified traces, tangle detection, random cover models
 * and the asymptotic-expansion estimators.
 *
 * Conventions:
 *   - every function returns an nbt_status; outputs go through pointers,
 *   - strings returned through char** are owned by the caller and must be
 *     released with nbt_string_free,
 *   - on failure, nbt_last_error() describes the problem for the calling
 *     thread until the next failing call,
 *   - structured inputs and outputs are JSON documents; see the library
 *     README for the formats.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nbt_status {
  NBT_OK = 0,
  NBT_ERR_PARSE = 1,
  NBT_ERR_INVALID_INVOLUTION = 2,
  NBT_ERR_DANGLING_REFERENCE = 3,
  NBT_ERR_VALIDATION = 4,
  NBT_ERR_PARITY_MISMATCH = 5,
  NBT_ERR_HALF_LOOP_UNSUPPORTED = 6,
  NBT_ERR_NOT_A_BEAD = 7,
  NBT_ERR_COMPONENT_SWALLOWED = 8,
  NBT_ERR_ROOT_BRACKET_FAILURE = 9,
  NBT_ERR_TOLERANCE_AMBIGUOUS = 10,
  NBT_ERR_CAP_UNVERIFIED = 11,
  NBT_ERR_TOO_LARGE = 12,
  NBT_ERR_ILL_CONDITIONED = 13,
  NBT_ERR_GENERATOR_NOT_POSITIVE = 14,
  NBT_ERR_UNKNOWN = 99
} nbt_status;

typedef struct nbt_graph nbt_graph;
typedef struct nbt_bgraph nbt_bgraph;

const char* nbt_last_error(void);
void nbt_string_free(char* s);

/* -- graphs ------------------------------------------------------------ */

nbt_status nbt_graph_parse(const char* json, nbt_graph** out);
nbt_status nbt_graph_to_json(const nbt_graph* g, char** json_out);
void nbt_graph_free(nbt_graph* g);

nbt_status nbt_graph_order(const nbt_graph* g, int64_t* out);
/* exact Euler characteristic #V - #Edir/2 as numerator/denominator */
nbt_status nbt_graph_euler_char(const nbt_graph* g, int64_t* num, int64_t* den);
nbt_status nbt_graph_prune(const nbt_graph* g, nbt_graph** out);
nbt_status nbt_graph_is_positive(const nbt_graph* g, int* out);
nbt_status nbt_graph_canonical_label(const nbt_graph* g, char** out);
nbt_status nbt_graph_mu1(const nbt_graph* g, double* out);
/* exact Trace(H^k), decimal string */
nbt_status nbt_graph_trace_pow(const nbt_graph* g, int k, char** decimal_out);
nbt_status nbt_graph_count_snbc(const nbt_graph* g, int k, int64_t* out);

/* -- B-graphs ---------------------------------------------------------- */

nbt_status nbt_bgraph_parse(const char* json, nbt_bgraph** out);
nbt_status nbt_bgraph_to_json(const nbt_bgraph* g, char** json_out);
void nbt_bgraph_free(nbt_bgraph* g);

nbt_status nbt_bgraph_canonical_label(const nbt_bgraph* g, char** out);
nbt_status nbt_count_injections(const nbt_bgraph* s, const nbt_bgraph* g, int64_t* out);
nbt_status nbt_aut_count(const nbt_bgraph* s, int64_t* out);
nbt_status nbt_validate_cover(const nbt_bgraph* g, int* out);

/* -- compound operations ------------------------------------------------
 *
 * One entry point per command; `params_json` carries the same structured
 * arguments the nbtrace CLI assembles from its flags.  Commands:
 *   mu1, trace, snbc, suppress, vlg, certificates, cert-trace, tangles,
 *   has-tangle, mobius, indicator, sample-cover, estimate, fit,
 *   subgraph-prob, c0
 */
nbt_status nbt_run(const char* command, const char* params_json, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* NBTRACE_H */
