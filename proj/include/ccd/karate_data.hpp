#pragma once

// Embedded weighted Zachary karate club dataset (34 nodes, 78 edges).
// Node 1 is labeled "H" and node 34 "A" (the two faction leaders).

namespace ccd::data {

inline constexpr const char* kKarateEdges = R"DATA(# Zachary's karate club, weighted (ZACHC)
H	2	4.0
H	3	5.0
H	4	3.0
H	5	3.0
H	6	3.0
H	7	3.0
H	8	2.0
H	9	2.0
H	11	2.0
H	12	3.0
H	13	1.0
H	14	3.0
H	18	2.0
H	20	2.0
H	22	2.0
H	32	2.0
2	3	6.0
2	4	3.0
2	8	4.0
2	14	5.0
2	18	1.0
2	20	2.0
2	22	2.0
2	31	2.0
3	4	3.0
3	8	4.0
3	9	5.0
3	10	1.0
3	14	3.0
3	28	2.0
3	29	2.0
3	33	2.0
4	8	3.0
4	13	3.0
4	14	3.0
5	7	2.0
5	11	3.0
6	7	5.0
6	11	3.0
6	17	3.0
7	17	3.0
9	31	3.0
9	33	3.0
9	A	4.0
10	A	2.0
14	A	3.0
15	33	3.0
15	A	2.0
16	33	3.0
16	A	4.0
19	33	1.0
19	A	2.0
20	A	1.0
21	33	3.0
21	A	1.0
23	33	2.0
23	A	3.0
24	26	5.0
24	28	4.0
24	30	3.0
24	33	5.0
24	A	4.0
25	26	2.0
25	28	3.0
25	32	2.0
26	32	7.0
27	30	4.0
27	A	2.0
28	A	4.0
29	32	2.0
29	A	2.0
30	33	4.0
30	A	2.0
31	33	3.0
31	A	3.0
32	33	4.0
32	A	4.0
33	A	5.0
)DATA";

inline constexpr const char* kKarateTruth = R"DATA(H	1
2	1
3	1
4	1
5	1
6	1
7	1
8	1
9	1
10	2
11	1
12	1
13	1
14	1
15	2
16	2
17	1
18	1
19	2
20	1
21	2
22	1
23	2
24	2
25	2
26	2
27	2
28	2
29	2
30	2
31	2
32	2
33	2
A	2
)DATA";

}  // namespace ccd::data
