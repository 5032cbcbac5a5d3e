/* SPDX-License-Identifier: Apache-2.0 */
/* C interface to the torus height library. Strings returned through char**
 * out-parameters are owned by the caller and released with tht_string_free. */
#ifndef THT_H
#define THT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define THT_API __declspec(dllexport)
#else
#define THT_API __attribute__((visibility("default")))
#endif

typedef enum tht_status {
  THT_OK = 0,
  THT_ERR_INPUT = 1,
  THT_ERR_STRUCTURAL = 2,
  THT_ERR_UNSUPPORTED = 3,
  THT_ERR_CONTRACT = 4,
  THT_ERR_INTERNAL = 5,
  THT_ERR_NULL_ARGUMENT = 6,
  THT_ERR_EXHAUSTED = 7
} tht_status;

typedef enum tht_verdict {
  THT_VERDICT_NEGATIVE_IMMERSIONS = 0,
  THT_VERDICT_ZERO_EULER_WITNESS = 1,
  THT_VERDICT_NOT_PI1_INJECTIVE = 2,
  THT_VERDICT_UNKNOWN = 3
} tht_verdict;

typedef enum tht_dot_target { THT_DOT_F = 0, THT_DOT_X = 1 } tht_dot_target;

typedef struct tht_instance tht_instance;

typedef struct tht_audit_options {
  int max_faces;
  int jobs;
  int isolated_edge_cap;
  int include_timings;
} tht_audit_options;

THT_API const char* tht_version(void);

/* Message of the last failed call on this thread; empty after success. */
THT_API const char* tht_last_error(void);

THT_API tht_status tht_instance_from_file(const char* path, tht_instance** out);
THT_API tht_status tht_instance_from_json(const char* json, tht_instance** out);
THT_API tht_status tht_instance_fixture(const char* name, tht_instance** out);
/* THT_ERR_EXHAUSTED when rejection sampling gives up for this seed. */
THT_API tht_status tht_instance_random(uint64_t seed, int petals, int h_edges, int max_image_len,
                                       tht_instance** out);
THT_API void tht_instance_free(tht_instance* instance);

THT_API tht_status tht_instance_name(const tht_instance* instance, char** out);
THT_API tht_status tht_instance_to_json(const tht_instance* instance, char** out);

/* cap <= 0 selects the default height cap. */
THT_API tht_status tht_analyze(const tht_instance* instance, int cap, tht_verdict* verdict, char** report);
THT_API tht_status tht_fold(const tht_instance* instance, int* pi1_injective, char** report);
/* THT_ERR_CONTRACT when the instance does not have finite directed height. */
THT_API tht_status tht_audit(const tht_instance* instance, const tht_audit_options* options, int* ok,
                             char** report);
THT_API tht_status tht_export_dot(const tht_instance* instance, tht_dot_target target, char** out);

THT_API void tht_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
