/* ogt: ordered gather trees: irregular gather/scatter schedules under a
 * linear (alpha-beta) transmission cost model.
 *
 * C API over the C++ core. All functions return ogt_status; outputs are
 * opaque handles or malloc'd strings released with ogt_string_free. On
 * failure, ogt_last_error() describes the problem for the calling thread.
 */
#ifndef OGT_H
#define OGT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ogt_status {
  OGT_OK = 0,
  OGT_ERR_INVALID_ARGUMENT = 1,
  OGT_ERR_PARSE = 2,
  OGT_ERR_LIMIT = 3,
  OGT_ERR_INTERNAL = 4
} ogt_status;

typedef struct ogt_model ogt_model;
typedef struct ogt_instance ogt_instance;
typedef struct ogt_tree ogt_tree;
typedef struct ogt_trace ogt_trace;
typedef struct ogt_report ogt_report;

/* Last error message of the calling thread; valid until the next failing
 * call. Never NULL. */
const char* ogt_last_error(void);

void ogt_string_free(char* s);

/* ----- cost model ------------------------------------------------------- */

/* alpha and beta are exact rationals: "4", "1/2" or "0.25". */
ogt_status ogt_model_create(const char* alpha, const char* beta, ogt_model** out);
void ogt_model_destroy(ogt_model* model);

/* ----- problem instances ------------------------------------------------ */

/* root < 0 selects auto-root mode. */
ogt_status ogt_instance_create(uint32_t p, const uint64_t* sizes, int64_t root,
                               ogt_instance** out);

/* dist: same | random | spikes | decreasing | alternating | two_blocks */
ogt_status ogt_instance_generate(const char* dist, uint32_t p, uint64_t b, uint64_t rho,
                                 uint64_t seed, int64_t root, ogt_instance** out);

uint32_t ogt_instance_p(const ogt_instance* inst);
ogt_status ogt_instance_sizes(const ogt_instance* inst, uint64_t* buffer, uint32_t buffer_len);
void ogt_instance_destroy(ogt_instance* inst);

/* ----- tree construction ------------------------------------------------ */

/* Centralized construction from global size knowledge. */
ogt_status ogt_tree_build(const ogt_instance* inst, ogt_tree** out);

/* Fully distributed construction; optionally returns the control-message
 * trace (pass NULL to discard it). The tree is identical to ogt_tree_build's. */
ogt_status ogt_tree_build_distributed(const ogt_instance* inst, ogt_tree** out,
                                      ogt_trace** trace_out);

/* Size-oblivious binomial gather tree (baseline); payload sizes are filled in
 * from the instance. */
ogt_status ogt_tree_binomial(const ogt_instance* inst, uint32_t root, ogt_tree** out);

ogt_status ogt_tree_to_json(const ogt_tree* tree, char** out);
ogt_status ogt_tree_to_dot(const ogt_tree* tree, char** out);
ogt_status ogt_tree_from_json(const char* json, ogt_tree** out);
uint32_t ogt_tree_p(const ogt_tree* tree);
uint32_t ogt_tree_root(const ogt_tree* tree);
uint32_t ogt_tree_edge_count(const ogt_tree* tree);
void ogt_tree_destroy(ogt_tree* tree);

/* ----- construction trace ----------------------------------------------- */

ogt_status ogt_trace_to_jsonl(const ogt_trace* trace, char** out);
ogt_status ogt_trace_stats(const ogt_trace* trace, uint64_t* message_count,
                           uint32_t* rounds_used, uint32_t* longest_dependent_chain,
                           uint32_t* max_payload_scalars);
void ogt_trace_destroy(ogt_trace* trace);

/* ----- simulation ------------------------------------------------------- */

/* include_construction prepends the chained control steps of the distributed
 * construction; scatter runs the time-reversed schedule instead of the
 * gather. */
ogt_status ogt_simulate(const ogt_tree* tree, const ogt_instance* inst, const ogt_model* model,
                        int include_construction, int scatter, ogt_report** out);

ogt_status ogt_report_makespan(const ogt_report* report, char** out);
ogt_status ogt_report_construction_time(const ogt_report* report, char** out);
ogt_status ogt_report_penalty_observed(const ogt_report* report, char** out);
/* start,end,from,to,lo,hi,size */
ogt_status ogt_report_events_csv(const ogt_report* report, char** out);
/* Makespan, bounds, root interval and per-processor finish times. */
ogt_status ogt_report_summary_json(const ogt_report* report, const ogt_tree* tree,
                                   const ogt_instance* inst, const ogt_model* model, char** out);
/* JSON array of violation strings; count receives its length. */
ogt_status ogt_report_validate(const ogt_report* report, const ogt_tree* tree,
                               const ogt_instance* inst, const ogt_model* model, char** out,
                               uint32_t* count);
void ogt_report_destroy(ogt_report* report);

/* ----- benchmark grid and guideline checks ------------------------------ */

/* kinds: comma-separated distribution names. algorithms: comma-separated
 * subset of tuw,tuw-auto,binomial,flat,flat-skip0,padded (NULL or "" = all).
 * root < 0 uses floor(p/2) per cell. format: "csv" or "md". */
ogt_status ogt_bench(const char* kinds, const char* algorithms, const uint32_t* p_list,
                     uint32_t p_count, const uint64_t* b_list, uint32_t b_count,
                     const char* alpha, const char* beta, uint64_t rho, uint64_t seed,
                     int64_t root, unsigned jobs, const char* format, char** out);

/* guidelines: bitmask, 1 | 2. Returns the report array as JSON and the number
 * of violated entries. */
ogt_status ogt_check_guidelines(const char* dist, uint32_t p, uint64_t b, uint64_t rho,
                                uint64_t seed, int64_t root, const char* alpha,
                                const char* beta, unsigned guidelines, char** out,
                                uint32_t* violations);

#ifdef __cplusplus
}
#endif

#endif /* OGT_H */
