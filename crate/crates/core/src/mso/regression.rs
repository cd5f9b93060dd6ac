//! S2S sentences with known truth values, each inside the truncation-stable
//! fragment.

pub const REGRESSION: &[(&str, bool)] = &[
    ("all x. x <= x", true),
    ("all x. root <= x", true),
    ("ex x. r0(root, x)", true),
    ("ex x. r1(root, x)", true),
    ("ex x. ex y. r0(x, y) and r1(root, x)", true),
    ("all x. all y. (x <= y and y <= x -> x = y)", true),
    ("all x. all y. x <= y or y <= x", false),
    ("all x. all y. x <=lex y or y <=lex x", true),
    ("all x. all y. (x <= y -> x <=lex y)", true),
    ("all x. all y. (r0(x, y) -> x <= y)", true),
    ("all x. all y. (r1(x, y) -> not y <= x)", true),
    ("ex x. ex y. not x <= y and not y <= x", true),
    ("ex x. ex y. x <=lex y and not x <= y", true),
    ("all x. all y. all z. (x <= y and y <= z -> x <= z)", true),
    ("all x. all y. (r0(root, x) and r1(root, y) -> x <=lex y)", true),
    ("ex x. ex y. (r0(root, x) and r1(root, y) and y <=lex x)", false),
    ("all x. all y. all z. (x <= z and y <= z -> x <= y or y <= x)", true),
    ("ex x. ex y. (r0(x, y) and r1(x, y))", false),
    ("all x. all y. (r0(x, y) -> not x = y)", true),
    ("ex x. not x = root and x <= root", false),
    ("ex x. ex y. (r0(root, x) and r1(x, y))", true),
    ("all x. all y. (r0(x, y) -> not r1(x, y))", true),
    ("all x. x <=lex root -> x = root", true),
    ("ex X. Sing(X)", true),
    ("ex X. ex x. (x in X and not x = root)", true),
    ("all X. all Y. (X = Y -> Y = X)", true),
    ("all X. all x. x in X or not x in X", true),
    ("ex X. ex x. not x in X", true),
    ("all X. all x. (x in X -> x = root)", false),
    ("ex x. ex y. (r0(x, y) and r0(y, x))", false),
];
