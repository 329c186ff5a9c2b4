import type { AskResponse } from "../src/types.js";

/** Captured from the live service running on the demo corpus. */

export const okResponse: AskResponse = {
  status: "ok",
  elapsed_ms: 1.62,
  rule_id: "Q1.1a",
  parse_tree:
    "Q1.1a\n  what_author: 'Ai'\n  vperfect: 'đã'\n  verb_write: 'viết'\n  book\n    book_type: 'sách'\n    TITLE: 'Toan'\n  PUNCT: '?'",
  intent: 'Author(title="Toan")',
  generated_query:
    'SELECT DISTINCT ?authorname\nFROM <http://localhost/owl_test/vocw_full.owl>\nWHERE {\n    {?author cs_author:content ?authorname}\n    .\n    {?author cs_author:write ?course}\n    .\n    {?course cs_name:content ?coursename\n    FILTER regex(?coursename , "^Toan$", "i").\n    }\n}',
  answers: ["Nguyễn Văn An"],
};

export const nestedResponse: AskResponse = {
  ...okResponse,
  intent: 'Author(title="Toan") AND Author(title="Van")',
  generated_query:
    'SELECT DISTINCT ?authorname\nFROM <http://localhost/owl_test/vocw_full.owl>\nWHERE {\n    {?author cs_author:content ?authorname}\n    .\n    {?course cs_name:content ?coursename\n    FILTER regex(?coursename , "^Toan$", "i").\n    }\n    .\n    {\n    SELECT DISTINCT ?authorname\n    FROM <http://localhost/owl_test/vocw_full.owl>\n    WHERE {\n        {?course cs_name:content ?coursename\n        FILTER regex(?coursename , "^Van$", "i").\n        }\n    }\n    }\n}',
};

export const countResponse: AskResponse = {
  status: "ok",
  elapsed_ms: 0.9,
  rule_id: "Q7.1",
  parse_tree: "Q7.1\n  how_many: 'Có bao nhiêu'\n  book\n    book_type: 'sách'\n  in_elib: 'trong thư viện'\n  PUNCT: '?'",
  intent: "CountBooks()",
  generated_query: "SELECT (COUNT(DISTINCT ?course) AS ?count)\nFROM <x>\nWHERE {\n}",
  answers: { count: 25 },
};

export const emptyResponse: AskResponse = {
  status: "empty",
  elapsed_ms: 1.1,
  rule_id: "Q1.1a",
  parse_tree: "Q1.1a",
  intent: 'Author(title="KhongTonTai")',
  generated_query: "SELECT DISTINCT ?authorname\nFROM <x>\nWHERE {\n}",
  answers: [],
};

export const noParseResponse: AskResponse = {
  status: "no_parse",
  elapsed_ms: 0.4,
  failure_position: 1,
  detail: "no rule matches; furthest failure at token 1",
};
