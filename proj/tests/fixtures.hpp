// Shared toy wordlists for the test suites.

#pragma once

#include <string>

namespace fixtures {

// Four artificial languages, three concepts, all cognate; concept B has no
// entry for L4. The initial consonant of concept C differs in L1 (x vs k),
// so it anchors its own correspondence pattern.
inline const char* kFourLanguages =
    "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n"
    "1\tL1\tA\tk a n\t1\n"
    "2\tL2\tA\tk a n\t1\n"
    "3\tL3\tA\tk a n\t1\n"
    "4\tL4\tA\tk a n\t1\n"
    "5\tL1\tB\tk u n\t2\n"
    "6\tL2\tB\tk u n\t2\n"
    "7\tL3\tB\tk u n\t2\n"
    "8\tL1\tC\tx a m\t3\n"
    "9\tL2\tC\tk a m\t3\n"
    "10\tL3\tC\tk a m\t3\n"
    "11\tL4\tC\tk a m\t3\n";

// Minimal well-formed document.
inline const char* kMinimal = "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n1\tL1\thand\tk a n\t7\n";

}  // namespace fixtures
