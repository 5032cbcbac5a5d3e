/* SPDX-License-Identifier: Apache-2.0 */
#include <stdio.h>
#include <string.h>

#include "tht/tht.h"

static int failures = 0;

#define EXPECT(cond)                                                 \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                    \
    }                                                                \
  } while (0)

static const char* fixture_a =
    "{\"rank\":2,\"basis\":[\"a\",\"b\"],\"H_generators\":[\"a\"],\"images\":{\"a\":\"b\"}}";

int main(void) {
  tht_instance* inst = NULL;
  char* report = NULL;
  tht_verdict verdict;
  int flag = -1;

  EXPECT(strlen(tht_version()) > 0);
  EXPECT(tht_instance_from_json(fixture_a, &inst) == THT_OK);
  EXPECT(tht_analyze(inst, 0, &verdict, &report) == THT_OK);
  EXPECT(verdict == THT_VERDICT_NEGATIVE_IMMERSIONS);
  EXPECT(report && strstr(report, "\"den\": 16") != NULL);
  tht_string_free(report);

  tht_audit_options options = {3, 1, 0, 0};
  EXPECT(tht_audit(inst, &options, &flag, &report) == THT_OK);
  EXPECT(flag == 1);
  tht_string_free(report);

  EXPECT(tht_export_dot(inst, THT_DOT_X, &report) == THT_OK);
  EXPECT(strstr(report, "dashed") != NULL);
  tht_string_free(report);
  tht_instance_free(inst);

  EXPECT(tht_instance_fixture("B", &inst) == THT_OK);
  EXPECT(tht_analyze(inst, 0, &verdict, &report) == THT_OK);
  EXPECT(verdict == THT_VERDICT_ZERO_EULER_WITNESS);
  tht_string_free(report);
  EXPECT(tht_audit(inst, &options, &flag, &report) == THT_ERR_CONTRACT);
  EXPECT(strlen(tht_last_error()) > 0);
  tht_instance_free(inst);

  EXPECT(tht_instance_fixture("E", &inst) == THT_OK);
  EXPECT(tht_fold(inst, &flag, &report) == THT_OK);
  EXPECT(flag == 0);
  tht_string_free(report);
  EXPECT(tht_analyze(inst, 0, &verdict, &report) == THT_OK);
  EXPECT(verdict == THT_VERDICT_NOT_PI1_INJECTIVE);
  tht_string_free(report);
  tht_instance_free(inst);

  inst = NULL;
  EXPECT(tht_instance_from_json("{\"rank\":", &inst) == THT_ERR_INPUT);
  EXPECT(inst == NULL);
  EXPECT(tht_instance_fixture("Z", &inst) == THT_ERR_INPUT);
  EXPECT(tht_instance_from_file("/nonexistent/instance.json", &inst) == THT_ERR_INPUT);
  EXPECT(tht_analyze(NULL, 0, &verdict, &report) == THT_ERR_NULL_ARGUMENT);
  EXPECT(tht_instance_random(7, 0, 1, 1, &inst) == THT_ERR_INPUT);

  EXPECT(tht_instance_random(7, 2, 1, 2, &inst) == THT_OK);
  EXPECT(tht_instance_to_json(inst, &report) == THT_OK);
  tht_instance* again = NULL;
  EXPECT(tht_instance_from_json(report, &again) == THT_OK);
  tht_string_free(report);
  tht_instance_free(again);
  tht_instance_free(inst);
  tht_instance_free(NULL);

  if (failures == 0) printf("capi: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
