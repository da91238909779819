#ifndef EVSTAB_H
#define EVSTAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Outcome of one command dispatch. On a run that produced a report (refusals
 * included) report_json and table are set and error is NULL; on a failed run
 * only error is set. All strings are heap-allocated; release them with
 * evstab_result_free. */
typedef struct evstab_result {
  int exit_code;
  char* report_json;
  char* table;
  char* error;
} evstab_result;

/* Runs `command` with n_params key/value parameter pairs (keys without the
 * leading "--", e.g. "field" / "GF(5)"). Commands: orbit, iterate,
 * preimage-poly, factor, counts, tree, certify, bijectivity, stickelberger,
 * settled, preset. Returns the exit code, also stored in out->exit_code:
 * 0 ok, 2 hypothesis refused, 3 resource cap exceeded, 4 bad input,
 * 5 internal invariant violated. */
int evstab_command(const char* command, const char* const* keys,
                   const char* const* values, size_t n_params,
                   evstab_result* out);

void evstab_result_free(evstab_result* r);

const char* evstab_version(void);

#ifdef __cplusplus
}
#endif

#endif
