/* Compiles the public header as C and drives one round trip. */
#include <stdio.h>
#include <string.h>

#include "cyq/cyq.h"

int main(void) {
  const char* json =
      "{\"d\": 3, \"vertices\": [\"1\"], \"half\": true,"
      " \"arrows\": [{\"id\": \"x\", \"src\": \"1\", \"tgt\": \"1\", \"deg\": 0}]}";
  cyq_quiver* q = NULL;
  cyq_series* w0 = NULL;
  cyq_series* w = NULL;
  char* report = NULL;
  int rc = 1;
  if (cyq_quiver_from_json(json, &q) != CYQ_OK) goto done;
  if (cyq_series_parse(q, "x*x*x", CYQ_PARSE_HOMOGENEOUS, &w0, NULL) != CYQ_OK) goto done;
  if (cyq_series_lift(w0, &w) != CYQ_OK) goto done;
  if (cyq_check(w, CYQ_CHECK_ALL, 0, &report) != CYQ_OK) goto done;
  rc = strstr(report, "\"pass\": true") ? 0 : 1;
done:
  if (rc) fprintf(stderr, "failed: %s\n", cyq_last_error());
  cyq_string_free(report);
  cyq_series_free(w);
  cyq_series_free(w0);
  cyq_quiver_free(q);
  return rc;
}
