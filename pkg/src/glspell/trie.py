"""Path-compressed trie over unstressed stem letters.

Built once from a full key set and immutable afterwards, so lookups are
safe under unrestricted concurrent use.  Lookup cost is bounded by the key
length, never by the number of stored stems.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class TrieNode:
    label: str  # edge label entering this node ("" on the root)
    record_id: int  # -1 when not terminal
    children: tuple["TrieNode", ...] = ()
    # children are sorted by first letter; labels start with distinct letters

    def child_for(self, ch: str) -> "TrieNode | None":
        lo, hi = 0, len(self.children)
        while lo < hi:
            mid = (lo + hi) // 2
            first = self.children[mid].label[0]
            if first < ch:
                lo = mid + 1
            elif first > ch:
                hi = mid
            else:
                return self.children[mid]
        return None


@dataclass
class CompressedTrie:
    root: TrieNode
    node_count: int

    @classmethod
    def build(cls, keys_to_records: dict[str, int]) -> "CompressedTrie":
        """Build from stem -> record id.  Keys must be non-empty."""
        items = sorted(keys_to_records.items())
        for key, _ in items:
            if not key:
                raise ValueError("empty trie key")
        counter = [1]  # root

        def make(label: str, lo: int, hi: int, depth: int) -> TrieNode:
            """Subtrie for items[lo:hi], all sharing items[lo][0][:depth]."""
            record_id = -1
            if lo < hi and len(items[lo][0]) == depth:
                record_id = items[lo][1]
                lo += 1
            children = []
            i = lo
            while i < hi:
                ch = items[i][0][depth]
                j = i
                while j < hi and items[j][0][depth] == ch:
                    j += 1
                # extend the child edge over the longest common run
                d = depth + 1
                while True:
                    if len(items[i][0]) == d:
                        break
                    nxt = items[i][0][d]
                    if all(len(items[k][0]) > d and items[k][0][d] == nxt
                           for k in range(i, j)):
                        d += 1
                    else:
                        break
                counter[0] += 1
                children.append(make(items[i][0][depth:d], i, j, d))
                i = j
            return TrieNode(label, record_id, tuple(children))

        root = make("", 0, len(items), 0)
        return cls(root, counter[0])

    def prefix_records(self, letters: str) -> list[tuple[int, int]]:
        """Every stored key that prefixes ``letters``.

        Returns (record_id, consumed_length) pairs in increasing prefix
        length.  Node visits are bounded by len(letters) + 1.
        """
        matches, _ = self.prefix_records_instrumented(letters)
        return matches

    def prefix_records_instrumented(
        self, letters: str
    ) -> tuple[list[tuple[int, int]], int]:
        """As ``prefix_records``, also returning the node visit count."""
        node = self.root
        visits = 1
        consumed = 0
        matches: list[tuple[int, int]] = []
        if node.record_id >= 0:  # only possible for the empty key; not built
            matches.append((node.record_id, 0))
        n = len(letters)
        while consumed < n:
            child = node.child_for(letters[consumed])
            if child is None:
                break
            visits += 1  # the probed child counts even when its label fails
            label = child.label
            end = consumed + len(label)
            if end > n or letters[consumed:end] != label:
                break
            consumed = end
            node = child
            if node.record_id >= 0:
                matches.append((node.record_id, consumed))
        return matches, visits

    def check_compressed(self) -> bool:
        """No non-terminal single-child nodes below the root."""
        stack = list(self.root.children)
        while stack:
            node = stack.pop()
            if node.record_id < 0 and len(node.children) == 1:
                return False
            stack.extend(node.children)
        return True

    def iter_nodes(self):
        """Deterministic preorder walk, children in label order."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))
