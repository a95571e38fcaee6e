#!/usr/bin/env python3
"""Regenerates the bundled miniature corpus under data/mini_corpus."""
import os

ROOT = os.path.join(os.path.dirname(__file__), "..", "data", "mini_corpus")

# (article_id, [(text, label, marked_phrase_or_None, technique)])
ARTICLES = [
    ("1001", [
        ("The city council approved the new transit budget on Tuesday.", "non-propaganda", None, None),
        ("Officials said the plan would add twelve bus routes by spring.", "non-propaganda", None, None),
        ("Critics of the plan called it a reckless betrayal of taxpayers.", "propaganda", "reckless betrayal", "Loaded_Language"),
        ("The mayor defended the proposal during a press conference.", "non-propaganda", None, None),
        ("Our city deserves transit we can be proud of, she said.", "propaganda", "Our city deserves transit we can be proud of", "Flag-Waving"),
        ("Construction is expected to begin in the autumn.", "non-propaganda", None, None),
        ("Transit ridership has declined for three consecutive years.", "non-propaganda", None, None),
        ("The budget passes to the state assembly for final review.", "non-propaganda", None, None),
        ("Several business owners spoke in support of the changes.", "non-propaganda", None, None),
        ("A public comment period remains open until the end of the month.", "non-propaganda", None, None),
        ("What about the potholes the council has ignored for a decade?", "propaganda", "What about the potholes the council has ignored for a decade", "Whataboutism"),
        ("The next council session is scheduled for early May.", "non-propaganda", None, None),
    ]),
    ("1002", [
        ("Researchers published the survey results in a regional journal.", "non-propaganda", None, None),
        ("The study tracked water quality across forty monitoring sites.", "non-propaganda", None, None),
        ("Everyone knows the river cleanup was a complete disaster.", "propaganda", "complete disaster", "Exaggeration,Minimisation"),
        ("Samples showed nitrate levels within federal limits at most sites.", "non-propaganda", None, None),
        ("Either we shut the plant today or the river dies forever.", "propaganda", "Either we shut the plant today or the river dies forever", "Black-and-White_Fallacy"),
        ("Funding for the monitoring program expires next year.", "non-propaganda", None, None),
        ("The agency plans to expand testing to two more counties.", "non-propaganda", None, None),
        ("Local volunteers collected samples every second weekend.", "non-propaganda", None, None),
        ("A follow-up study is planned for the coming winter.", "non-propaganda", None, None),
        ("Farmers near the delta questioned the sampling methodology.", "non-propaganda", None, None),
        ("The so-called experts behind this report cannot be trusted.", "propaganda", "so-called experts", "Name_Calling,Labeling"),
        ("Full datasets are available on the agency website.", "non-propaganda", None, None),
        ("Officials will discuss the findings at a town hall next week.", "non-propaganda", None, None),
        ("The river association thanked the volunteers for their work.", "non-propaganda", None, None),
    ]),
    ("1003", [
        ("The school board met to discuss the district calendar.", "non-propaganda", None, None),
        ("Parents raised questions about the proposed start times.", "non-propaganda", None, None),
        ("Think of the children before you vote against this measure.", "propaganda", "Think of the children", "Appeal_to_fear-prejudice"),
        ("The superintendent presented enrollment projections for next year.", "non-propaganda", None, None),
        ("Board members voted to delay the decision until June.", "non-propaganda", None, None),
        ("A committee will gather feedback from teachers and staff.", "non-propaganda", None, None),
        ("As the saying goes, strong schools make strong towns.", "propaganda", "strong schools make strong towns", "Slogans"),
        ("The district expects flat enrollment over the next five years.", "non-propaganda", None, None),
        ("Bus schedules will be published before the first day of class.", "non-propaganda", None, None),
        ("Two new crossing guards were approved for the elm street school.", "non-propaganda", None, None),
        ("Everyone in town is already behind this plan, so join in.", "propaganda", "Everyone in town is already behind this plan", "Bandwagon"),
        ("The meeting adjourned shortly after nine in the evening.", "non-propaganda", None, None),
        ("Minutes will be posted on the district website on Friday.", "non-propaganda", None, None),
        ("The board reconvenes on the second Tuesday of the month.", "non-propaganda", None, None),
    ]),
    ("1004", [
        ("The harbor commission reviewed the annual dredging report.", "non-propaganda", None, None),
        ("Shipping volumes rose four percent compared with last year.", "non-propaganda", None, None),
        ("Doubt has been cast on whether the commission can manage anything at all.", "propaganda", "whether the commission can manage anything at all", "Doubt"),
        ("Two berths will close for maintenance in the off season.", "non-propaganda", None, None),
        ("The repairs follow a routine inspection completed in March.", "non-propaganda", None, None),
        ("Ferry service will continue on the usual schedule.", "non-propaganda", None, None),
        ("The commission approved funds for a new navigation beacon.", "non-propaganda", None, None),
        ("Fishermen asked for clearer signage near the east jetty.", "non-propaganda", None, None),
        ("One delay and the whole port economy collapses, a speaker warned.", "propaganda", "One delay and the whole port economy collapses", "Causal_Oversimplification"),
        ("A final vote on the harbor master contract is expected in July.", "non-propaganda", None, None),
    ]),
]


def main():
    os.makedirs(ROOT, exist_ok=True)
    labels = []
    spans = []
    for article_id, sentences in ARTICLES:
        lines = []
        offset = 0
        for idx, (text, label, phrase, technique) in enumerate(sentences, 1):
            lines.append(text)
            labels.append(f"{article_id}\t{idx}\t{label}")
            if phrase is not None:
                start = offset + text.index(phrase)
                end = start + len(phrase.encode("utf-8"))
                spans.append(f"{article_id}\t{technique}\t{start}\t{end}")
            offset += len(text.encode("utf-8")) + 1  # LF
        with open(os.path.join(ROOT, f"article{article_id}.txt"), "w", newline="\n") as f:
            f.write("\n".join(lines) + "\n")
    with open(os.path.join(ROOT, "labels.tsv"), "w", newline="\n") as f:
        f.write("\n".join(labels) + "\n")
    with open(os.path.join(ROOT, "spans.tsv"), "w", newline="\n") as f:
        f.write("\n".join(spans) + "\n")
    total = sum(len(s) for _, s in ARTICLES)
    print(f"wrote {len(ARTICLES)} articles, {total} sentences, {len(spans)} spans")


if __name__ == "__main__":
    main()
